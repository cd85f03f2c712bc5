//! Reference values from the appendices, embedded as data files, and the
//! comparison of each record against a fresh computation.

use std::collections::BTreeMap;

use crate::matprod::{build, build_s_trace, closed_form_s_tr_min1, Basis, Family, MatprodError, MinSide};
use crate::scalar::{parse_scalar, ExactScalar};
use crate::threedim::{Element3D, ElementKind};

pub const APPENDIX_A: &str = include_str!("../data/appendix_a.txt");
pub const APPENDIX_C: &str = include_str!("../data/appendix_c.txt");

#[derive(Clone, Debug)]
pub struct ElementRecord {
    pub kind: ElementKind,
    /// Output indices followed by input indices.
    pub indices: Vec<u32>,
    pub value: ExactScalar,
    pub source: String,
}

#[derive(Clone, Debug)]
pub struct MatrixRecord {
    pub family: Family,
    pub n: usize,
    pub columns: BTreeMap<Basis, Vec<(Basis, ExactScalar)>>,
    pub source: String,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub label: String,
    pub source: String,
    pub passed: bool,
    pub detail: String,
}

fn line_err(no: usize, msg: impl std::fmt::Display) -> MatprodError {
    MatprodError::Format(format!("line {}: {}", no + 1, msg))
}

fn parse_indices(s: &str, no: usize) -> Result<Vec<u32>, MatprodError> {
    s.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| line_err(no, format!("bad index {:?}", x)))).collect()
}

pub fn parse_elements(text: &str) -> Result<Vec<ElementRecord>, MatprodError> {
    let mut source = String::new();
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("# source:") {
            source = s.trim().to_string();
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (lhs, value) = line.split_once('=').ok_or_else(|| line_err(no, "missing '='"))?;
        let mut words = lhs.split_whitespace();
        let kind = match words.next() {
            Some("R3D") => ElementKind::R3D,
            Some("K3D") => ElementKind::K3D,
            other => return Err(line_err(no, format!("unknown kind {:?}", other))),
        };
        let rest: String = words.collect::<Vec<_>>().join(" ");
        let (upper, lower) = rest.split_once(';').ok_or_else(|| line_err(no, "missing ';'"))?;
        let mut indices = parse_indices(upper, no)?;
        indices.extend(parse_indices(lower, no)?);
        let want = if kind == ElementKind::R3D { 6 } else { 8 };
        if indices.len() != want {
            return Err(line_err(no, format!("expected {} indices", want)));
        }
        let value = parse_scalar(value.trim()).map_err(|e| line_err(no, e))?;
        out.push(ElementRecord { kind, indices, value, source: source.clone() });
    }
    Ok(out)
}

pub fn parse_matrices(text: &str) -> Result<Vec<MatrixRecord>, MatprodError> {
    let mut source = String::new();
    let mut out = Vec::new();
    let mut current: Option<MatrixRecord> = None;
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("# source:") {
            source = s.trim().to_string();
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(head) = line.strip_prefix("matrix ") {
            if current.is_some() {
                return Err(line_err(no, "nested matrix block"));
            }
            let (fam, n) = head.rsplit_once(" n=").ok_or_else(|| line_err(no, "expected `matrix <family> n=<n>`"))?;
            let family = Family::parse(fam.trim()).map_err(|e| line_err(no, e))?;
            let n = n.trim().parse().map_err(|_| line_err(no, "bad n"))?;
            current = Some(MatrixRecord { family, n, columns: BTreeMap::new(), source: source.clone() });
            continue;
        }
        if line == "end" {
            out.push(current.take().ok_or_else(|| line_err(no, "`end` outside a block"))?);
            continue;
        }
        let rec = current.as_mut().ok_or_else(|| line_err(no, "entry outside a block"))?;
        let (map, value) = line.split_once(':').ok_or_else(|| line_err(no, "missing ':'"))?;
        let (col, row) = map.split_once("->").ok_or_else(|| line_err(no, "missing '->'"))?;
        let col = Basis::parse(col.trim()).map_err(|e| line_err(no, e))?;
        let row = Basis::parse(row.trim()).map_err(|e| line_err(no, e))?;
        let value = parse_scalar(value.trim()).map_err(|e| line_err(no, e))?;
        rec.columns.entry(col).or_default().push((row, value));
    }
    if current.is_some() {
        return Err(MatprodError::Format("unterminated matrix block".into()));
    }
    Ok(out)
}

pub fn check_element(r: &ElementRecord) -> Outcome {
    let got = Element3D::evaluate(r.kind, &r.indices).expect("index count checked at parse").value;
    let label = Element3D { kind: r.kind, indices: r.indices.clone(), value: r.value.clone() }.to_string();
    let passed = got.to_string() == r.value.to_string();
    let detail = if passed { String::new() } else { format!("computed {}", got) };
    Outcome { label, source: r.source.clone(), passed, detail }
}

/// Compares the listed images with a fresh build; coefficients are compared as canonical strings.
pub fn check_matrix(r: &MatrixRecord) -> Outcome {
    let label = format!("{} n={}", r.family, r.n);
    let built = match build(r.n, r.family) {
        Ok(m) => m,
        Err(e) => return Outcome { label, source: r.source.clone(), passed: false, detail: e.to_string() },
    };
    let mut detail = String::new();
    for (col, want) in &r.columns {
        let mut want: Vec<(Basis, String)> = want.iter().map(|(b, v)| (*b, v.to_string())).collect();
        want.sort();
        let got: Vec<(Basis, String)> = built.column(col).into_iter().map(|(b, v)| (b, v.to_string())).collect();
        if got != want {
            detail = format!("image of |{}⟩ differs: computed {:?}", col, got);
            break;
        }
    }
    Outcome { label, source: r.source.clone(), passed: detail.is_empty(), detail }
}

/// Element-list form of `S^tr_{m,1}` and `S^tr_{1,m}` against the trace construction.
pub fn check_closed_forms(max_n: usize) -> Vec<Outcome> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for m in 1..=n {
            for side in [MinSide::M1, MinSide::OneM] {
                let (l, mm) = if side == MinSide::M1 { (m, 1) } else { (1, m) };
                let label = format!("S^tr_{{{},{}}} n={} closed form", l, mm, n);
                let res = closed_form_s_tr_min1(n, m, side).and_then(|c| Ok((c, build_s_trace(n, l, mm)?)));
                let (passed, detail) = match res {
                    Ok((c, b)) if c.entries == b.entries => (true, String::new()),
                    Ok(_) => (false, "entries differ".to_string()),
                    Err(e) => (false, e.to_string()),
                };
                out.push(Outcome { label, source: "closed form".into(), passed, detail });
            }
        }
    }
    out
}

/// Every embedded record plus the closed-form comparison for `n ≤ 4`.
pub fn check_all() -> Result<Vec<Outcome>, MatprodError> {
    let mut out: Vec<Outcome> = parse_elements(APPENDIX_A)?.iter().map(check_element).collect();
    let mats = parse_matrices(APPENDIX_C)?;
    out.extend(mats.iter().map(check_matrix));
    out.extend(check_closed_forms(4));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_files_parse() {
        assert_eq!(parse_elements(APPENDIX_A).unwrap().len(), 12);
        let m = parse_matrices(APPENDIX_C).unwrap();
        assert_eq!(m.len(), 13);
        assert!(m.iter().all(|r| !r.source.is_empty()));
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(parse_elements("R3D 1,2 ; 3 = 1").is_err());
        assert!(parse_matrices("matrix K^tr n=2\n00 -> 11 : 1\n").is_err());
        assert!(parse_matrices("00 -> 11 : 1\n").is_err());
    }
}
