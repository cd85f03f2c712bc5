use std::process::{Command, Output};

use qreflect::matprod::{build, Family, QMatrix};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qreflect")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn matrix_round_trips_and_is_deterministic() {
    let args = ["matrix", "--family", "s-boundary", "--s", "1", "--sp", "1", "--n", "2"];
    let a = run(&args);
    assert!(a.status.success());
    let b = run(&["-j", "1", "matrix", "--family", "s-boundary", "--s", "1", "--sp", "1", "--n", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let m = QMatrix::from_json(&stdout_json(&a)).unwrap();
    assert_eq!(m, build(2, Family::SBoundary { s: 1, sp: 1 }).unwrap());
}

#[test]
fn matrix_text_rendering() {
    let o = run(&["--format", "text", "matrix", "--family", "k-boundary", "--k", "2", "--kp", "2", "--n", "1"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("|0⟩ ↦ |1⟩"));
    assert!(text.contains("|1⟩ ↦ -|0⟩"));
    let o = run(&["matrix", "--family", "k-trace", "--n", "3"]);
    let m = QMatrix::from_json(&stdout_json(&o)).unwrap();
    assert_eq!(m, build(3, Family::KTrace).unwrap());
}

#[test]
fn verify_pass_and_usage_errors() {
    let o = run(&["verify", "--identity", "ybe", "--family", "tr", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let c = stdout_json(&o);
    assert_eq!(c["status"], "pass");
    assert!(c.get("seconds").is_none());

    let o = run(&[
        "--timing",
        "verify",
        "--identity",
        "re",
        "--family",
        "boundary",
        "--s",
        "1",
        "--sp",
        "1",
        "--k",
        "2",
        "--kp",
        "2",
        "--n",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout_json(&o)["seconds"].is_number());

    let o = run(&["verify", "--identity", "re", "--family", "boundary", "--s", "2", "--sp", "2", "--k", "1", "--kp", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("admissible"));

    assert_eq!(run(&["verify", "--identity", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["matrix", "--family", "s-boundary", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["matrix", "--family", "s-boundary", "--s", "3", "--sp", "1", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn verify_three_dimensional_and_intertwiner() {
    let o = run(&["verify", "--identity", "quantized-re", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--identity", "tetrahedron", "--input", "1,0,1,0,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--identity", "tetrahedron", "--input", "1,0,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--identity", "intertwiner", "--algebra", "D2", "--n", "1", "--sign", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["params"]["p_rule"], "p = -i q^-1");
    let o = run(&["verify", "--identity", "intertwiner", "--algebra", "A", "--n", "3", "--l", "1", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn element_and_goldens() {
    let o = run(&["element", "--kind", "k3d", "--out", "1,1,1,1", "--in", "0,2,1,0"]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["value"], "-q^(13) - q^(11) - q^(9) + q^(5)");
    assert_eq!(run(&["element", "--kind", "r3d", "--out", "1,1", "--in", "0,2,0"]).status.code(), Some(2));

    let o = run(&["goldens"]);
    assert_eq!(o.status.code(), Some(0));
    let g = stdout_json(&o);
    assert_eq!(g["status"], "pass");
    assert_eq!(g["passed"], g["total"]);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("qreflect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    let o = run(&["-o", path.to_str().unwrap(), "matrix", "--family", "k-trace", "--n", "2"]);
    assert!(o.status.success() && o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["family"], "K^tr");
    std::fs::remove_dir_all(&dir).unwrap();
}
