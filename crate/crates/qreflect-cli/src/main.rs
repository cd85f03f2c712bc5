use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qreflect::goldens;
use qreflect::matprod::{build, build_s_trace, Family, QMatrix};
use qreflect::threedim::{Element3D, ElementKind};
use qreflect::uqrep::{check_intertwiner, AlgebraSpec, AlgebraType};
use qreflect::verify::{self, Certificate, EigenKind, ReDomain, Spot, VerifyError};

#[derive(Parser, Debug)]
#[command(name = "qreflect", version, about = "Exact matrix-product solutions of the Yang–Baxter and reflection equations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, short = 'j', env = "QREFLECT_JOBS", global = true)]
    jobs: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an S or K matrix.
    Matrix(MatrixArgs),
    /// Run an identity check and emit a certificate.
    Verify(VerifyArgs),
    /// Compare every embedded reference value with a fresh computation.
    Goldens,
    /// Evaluate one matrix element of R̂ or 𝒦.
    Element(ElementArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MatrixFamily {
    STrace,
    SBoundary,
    KTrace,
    KBoundary,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long, value_enum)]
    family: MatrixFamily,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = boundary_index)]
    s: Option<u8>,
    #[arg(long, value_parser = boundary_index)]
    sp: Option<u8>,
    #[arg(long, value_parser = boundary_index)]
    k: Option<u8>,
    #[arg(long, value_parser = boundary_index)]
    kp: Option<u8>,
    /// Restrict S^tr to the block of weights (l, m).
    #[arg(long, requires = "m")]
    l: Option<usize>,
    #[arg(long, requires = "l")]
    m: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Identity {
    Ybe,
    Re,
    Involution,
    QuantizedRe,
    Rlll,
    R3dRelations,
    BoundaryR,
    BoundaryK,
    Tetrahedron,
    Reflection3d,
    Intertwiner,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PairFamily {
    Tr,
    Boundary,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    identity: Identity,
    /// `tr` for S^tr/K^tr, `boundary` for S^{s,s'}/K^{k,k'}.
    #[arg(long, value_enum, default_value_t = PairFamily::Tr)]
    family: PairFamily,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_parser = boundary_index, default_value_t = 1)]
    s: u8,
    #[arg(long, value_parser = boundary_index, default_value_t = 1)]
    sp: u8,
    #[arg(long, value_parser = boundary_index, default_value_t = 1)]
    k: u8,
    #[arg(long, value_parser = boundary_index, default_value_t = 1)]
    kp: u8,
    /// Check the reflection equation on the line x = y instead.
    #[arg(long)]
    diagonal: bool,
    /// Fock degree bound for the three-dimensional identities.
    #[arg(long, default_value_t = 5)]
    degree: u32,
    /// Algebra for the intertwiner check: A, D2, B, Btilde or D1.
    #[arg(long, value_parser = algebra)]
    algebra: Option<AlgebraType>,
    /// Sign in p = ±i q^-1.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    sign: i8,
    /// Weights (l, m) of the S^tr block for type A.
    #[arg(long, requires = "m")]
    l: Option<usize>,
    #[arg(long, requires = "l")]
    m: Option<usize>,
    /// Input basis tuple for spot checks, comma separated; repeatable.
    #[arg(long = "input", value_parser = indices)]
    inputs: Vec<Tuple>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    R3d,
    K3d,
}

#[derive(Args, Debug)]
struct ElementArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long = "out", value_parser = indices)]
    out: Tuple,
    #[arg(long = "in", value_parser = indices)]
    input: Tuple,
}

fn boundary_index(s: &str) -> Result<u8, String> {
    match s {
        "1" => Ok(1),
        "2" => Ok(2),
        _ => Err(format!("expected 1 or 2, got {:?}", s)),
    }
}

/// Comma-separated basis indices.
#[derive(Clone, Debug)]
struct Tuple(Vec<u32>);

fn indices(s: &str) -> Result<Tuple, String> {
    s.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| format!("bad index {:?}", x))).collect::<Result<_, _>>().map(Tuple)
}

fn algebra(s: &str) -> Result<AlgebraType, String> {
    AlgebraType::parse(s).ok_or_else(|| format!("unknown algebra {:?}; expected A, D2, B, Btilde or D1", s))
}

/// A command's result: rendered output and whether everything passed.
struct Report {
    json: Value,
    text: String,
    passed: bool,
}

enum Failure {
    Usage(String),
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<qreflect::matprod::MatprodError> for Failure {
    fn from(e: qreflect::matprod::MatprodError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn cert_report(c: Certificate, timing: bool) -> Report {
    let json = if timing { c.to_json() } else { c.to_json_untimed() };
    let mut text = format!("{} {} {}\nchecked: {}", if c.passed() { "pass" } else { "FAIL" }, c.identity, c.params, c.checked);
    if timing {
        text.push_str(&format!("\nseconds: {:.3}", c.seconds));
    }
    if let Some(w) = &c.witness {
        text.push_str(&format!("\nfailures: {}\nwitness: {}", c.failures, w));
    }
    Report { json, text, passed: c.passed() }
}

fn matrix_report(m: QMatrix) -> Report {
    let text = format!("{} n={} ({})\n{}", m.family, m.n, m.block, m.pretty());
    Report { json: m.to_json(), text, passed: true }
}

fn need(v: Option<u8>, flag: &str, family: &str) -> Result<u8, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--family {} needs --{}", family, flag)))
}

fn cmd_matrix(a: &MatrixArgs) -> Result<Report, Failure> {
    if a.n == 0 || a.n > 12 {
        return Err(Failure::Usage(format!("--n must be between 1 and 12, got {}", a.n)));
    }
    if a.l.is_some() && a.family != MatrixFamily::STrace {
        return Err(Failure::Usage("--l/--m only apply to --family s-trace".into()));
    }
    let family = match a.family {
        MatrixFamily::STrace => {
            if let (Some(l), Some(m)) = (a.l, a.m) {
                if l > a.n || m > a.n {
                    return Err(Failure::Usage(format!("block weights must be at most n={}", a.n)));
                }
                return Ok(matrix_report(build_s_trace(a.n, l, m)?));
            }
            Family::STrace
        }
        MatrixFamily::SBoundary => Family::SBoundary { s: need(a.s, "s", "s-boundary")?, sp: need(a.sp, "sp", "s-boundary")? },
        MatrixFamily::KTrace => Family::KTrace,
        MatrixFamily::KBoundary => Family::KBoundary { k: need(a.k, "k", "k-boundary")?, kp: need(a.kp, "kp", "k-boundary")? },
    };
    Ok(matrix_report(build(a.n, family)?))
}

fn cmd_verify(a: &VerifyArgs, timing: bool) -> Result<Report, Failure> {
    let (s_fam, k_fam) = match a.family {
        PairFamily::Tr => (Family::STrace, Family::KTrace),
        PairFamily::Boundary => (Family::SBoundary { s: a.s, sp: a.sp }, Family::KBoundary { k: a.k, kp: a.kp }),
    };
    let spots = |len: usize| -> Result<Vec<Spot>, Failure> {
        if a.inputs.is_empty() {
            return Ok(vec![(vec![0; len], None)]);
        }
        Ok(a.inputs.iter().map(|i| (i.0.clone(), None)).collect())
    };
    let cert = match a.identity {
        Identity::Ybe => verify::check_ybe(s_fam, a.n)?,
        Identity::Re => {
            if !verify::admissible(s_fam, k_fam) {
                return Err(VerifyError::InadmissiblePair { s: s_fam.to_string(), k: k_fam.to_string() }.into());
            }
            let domain = if a.diagonal { ReDomain::Diagonal } else { ReDomain::Generic };
            verify::re_certificate(&build(a.n, s_fam)?, &build(a.n, k_fam)?, domain)?
        }
        Identity::Involution => verify::check_involution(a.degree, a.degree, a.degree),
        Identity::QuantizedRe => verify::check_quantized_re(a.degree, None),
        Identity::Rlll => verify::check_rlll(a.degree),
        Identity::R3dRelations => verify::check_r3d_relations(a.degree),
        Identity::BoundaryR => verify::check_boundary_eigen(EigenKind::R { s: a.s }, a.degree)?,
        Identity::BoundaryK => verify::check_boundary_eigen(EigenKind::K { s: a.s, k: a.k }, a.degree)?,
        Identity::Tetrahedron => verify::check_tetra_spot(&spots(6)?)?,
        Identity::Reflection3d => verify::check_3dre_spot(&spots(9)?)?,
        Identity::Intertwiner => {
            let kind = a.algebra.ok_or_else(|| Failure::Usage("--identity intertwiner needs --algebra".into()))?;
            let spec = AlgebraSpec::new(kind, a.n).map_err(|e| Failure::Usage(e.to_string()))?.with_sign(a.sign);
            let s = match (kind, a.l, a.m) {
                (AlgebraType::A, Some(l), Some(m)) if l <= a.n && m <= a.n => build_s_trace(a.n, l, m)?,
                (AlgebraType::A, None, None) => build(a.n, Family::STrace)?,
                (_, None, None) => build(a.n, kind.family())?,
                _ => return Err(Failure::Usage("--l/--m apply to --algebra A with weights at most n".into())),
            };
            check_intertwiner(&spec, &s)?
        }
    };
    Ok(cert_report(cert, timing))
}

fn cmd_goldens() -> Result<Report, Failure> {
    let outcomes = goldens::check_all()?;
    let passed = outcomes.iter().all(|o| o.passed);
    let items: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let mut v = json!({"label": o.label, "source": o.source, "status": if o.passed { "pass" } else { "fail" }});
            if !o.passed {
                v["detail"] = json!(o.detail);
            }
            v
        })
        .collect();
    let mut text: Vec<String> = outcomes
        .iter()
        .map(|o| {
            format!(
                "{} {} [{}]{}",
                if o.passed { "pass" } else { "FAIL" },
                o.label,
                o.source,
                if o.passed { String::new() } else { format!(": {}", o.detail) }
            )
        })
        .collect();
    let n_pass = outcomes.iter().filter(|o| o.passed).count();
    text.push(format!("{}/{} match", n_pass, outcomes.len()));
    let json = json!({"status": if passed { "pass" } else { "fail" }, "passed": n_pass, "total": outcomes.len(), "records": items});
    Ok(Report { json, text: text.join("\n"), passed })
}

fn cmd_element(a: &ElementArgs) -> Result<Report, Failure> {
    let (kind, arity) = match a.kind {
        Kind::R3d => (ElementKind::R3D, 3),
        Kind::K3d => (ElementKind::K3D, 4),
    };
    if a.out.0.len() != arity || a.input.0.len() != arity {
        return Err(Failure::Usage(format!("{:?} takes {} indices in --out and in --in", a.kind, arity)));
    }
    let mut idx = a.out.0.clone();
    idx.extend(&a.input.0);
    let e = Element3D::evaluate(kind, &idx).expect("arity checked");
    Ok(Report { json: e.to_json(), text: e.to_string(), passed: true })
}

fn emit(cli: &Cli, r: &Report) -> std::io::Result<()> {
    let mut body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&r.json).expect("serializable"),
        Format::Text => r.text.clone(),
    };
    body.push('\n');
    match &cli.output {
        Some(p) => std::fs::write(p, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("thread pool configured once");
    }
    let result = match &cli.command {
        Command::Matrix(a) => cmd_matrix(a),
        Command::Verify(a) => cmd_verify(a, cli.timing),
        Command::Goldens => cmd_goldens(),
        Command::Element(a) => cmd_element(a),
    };
    match result {
        Ok(r) => {
            if let Err(e) = emit(&cli, &r) {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
    }
}
