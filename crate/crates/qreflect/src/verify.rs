//! Exact certificates for the Yang–Baxter, reflection, tetrahedron-type and
//! boundary identities.
//!
//! Two-dimensional checks clear denominators once per matrix: each matrix is
//! written as `N(z)/D(z)` with a polynomial matrix `N`, and since both sides of
//! every identity contain the same multiset of factors, comparing the products
//! of the `N`'s after the spectral substitution is an exact test. All Fock-space
//! checks act on finitely supported vectors and are exact without truncation
//! of intermediate sums.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::matprod::{build, Basis, BitString, Family, MatprodError, QMatrix};
use crate::qboson::{boundary_vector, Algebra, BoundaryKind, Generator, OperatorWord};
use crate::scalar::{gcd, ExactScalar, Poly, RatFun, ScalarError, Var};
use crate::threedim::{double_q, k3d_poly, r3d_poly, BasisTensor};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{s} and {k} are not an admissible pair for the reflection equation")]
    InadmissiblePair { s: String, k: String },
    #[error("{0}")]
    BadParameter(String),
    #[error(transparent)]
    Matprod(#[from] MatprodError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one identity check on a finite domain.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub identity: String,
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Number of component comparisons performed.
    pub checked: usize,
    pub failures: usize,
    pub seconds: f64,
}

impl Certificate {
    pub fn finish(identity: &str, params: Value, checked: usize, mut failures: Vec<String>, start: Instant) -> Self {
        failures.sort();
        Certificate {
            identity: identity.to_string(),
            params,
            status: if failures.is_empty() { Status::Pass } else { Status::Fail },
            witness: failures.first().cloned(),
            checked,
            failures: failures.len(),
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    /// The JSON record without the timing field, for byte-stable output.
    pub fn to_json_untimed(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().expect("object").remove("seconds");
        v
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let st = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{} {} {} ({} components, {:.2}s)", st, self.identity, self.params, self.checked, self.seconds)?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {}", w)?;
        }
        Ok(())
    }
}

type Key = (u32, u32);
type Columns = HashMap<Key, Vec<(Key, Poly)>>;
/// Per-input result: comparisons made, failure witnesses, per-component outcomes.
type JobResult = (usize, Vec<String>, Vec<(String, bool)>);

/// Numerator matrix of `M = N/D`, columns keyed by basis indices.
#[derive(Clone, Debug)]
struct PolyOp {
    cols: Columns,
}

fn key(b: &Basis) -> Key {
    match b {
        Basis::Single(a) => (a.index(), 0),
        Basis::Pair(a, c) => (a.index(), c.index()),
    }
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = gcd(a, b);
    a.try_div(&g).expect("gcd divides").mul(b)
}

/// Substitutes `z ↦ x^ex y^ey`.
fn spectral(p: &Poly, ex: i32, ey: i32) -> Poly {
    let (z, x, y) = (Var::Z as usize, Var::X as usize, Var::Y as usize);
    p.map_exps(|e| {
        let mut e = *e;
        let k = e[z];
        e[z] = 0;
        e[x] += ex * k;
        e[y] += ey * k;
        e
    })
}

fn numerators(m: &QMatrix) -> Result<(Columns, Poly), VerifyError> {
    let mut den = Poly::one();
    for v in m.entries.values() {
        if !v.is_rational() {
            return Err(VerifyError::BadParameter("matrix entry is not rational".into()));
        }
        den = lcm(&den, v.rat().den());
    }
    let mut cols: Columns = HashMap::new();
    for ((r, c), v) in &m.entries {
        let f = den.try_div(v.rat().den()).expect("lcm is a multiple");
        cols.entry(key(c)).or_default().push((key(r), v.rat().num().mul(&f)));
    }
    Ok((cols, den))
}

impl PolyOp {
    fn at(base: &Columns, ex: i32, ey: i32) -> PolyOp {
        let cols = base.iter().map(|(c, img)| (*c, img.iter().map(|(r, p)| (*r, spectral(p, ex, ey))).collect())).collect();
        PolyOp { cols }
    }

    /// Acts with the first tensor slot on factor `i` and the second on factor `j`.
    fn apply_pair(&self, v: &BasisTensor, i: usize, j: usize) -> BasisTensor {
        let mut out = BasisTensor::default();
        for (k, a) in &v.amps {
            if let Some(img) = self.cols.get(&(k[i], k[j])) {
                for ((r0, r1), p) in img {
                    let mut nk = k.clone();
                    nk[i] = *r0;
                    nk[j] = *r1;
                    out.add(nk, a.mul(p));
                }
            }
        }
        out
    }

    fn apply_single(&self, v: &BasisTensor, i: usize) -> BasisTensor {
        let mut out = BasisTensor::default();
        for (k, a) in &v.amps {
            if let Some(img) = self.cols.get(&(k[i], 0)) {
                for ((r0, _), p) in img {
                    let mut nk = k.clone();
                    nk[i] = *r0;
                    out.add(nk, a.mul(p));
                }
            }
        }
        out
    }
}

fn diff_witness(label: &str, lhs: &BasisTensor, rhs: &BasisTensor) -> Option<String> {
    if lhs == rhs {
        return None;
    }
    let mut d = lhs.clone();
    d.sub_tensor(rhs);
    let (k, p) = d.amps.iter().next().expect("nonzero difference");
    Some(format!("{} output {:?} differs by {}", label, k, p))
}

fn fmt_key(k: &[u32], n: usize) -> String {
    k.iter().map(|&i| BitString::new(n, i).to_string()).collect::<Vec<_>>().join(",")
}

/// `S_12(x) S_13(xy) S_23(y) = S_23(y) S_13(xy) S_12(x)` on every basis vector of `V^{⊗n}⊗V^{⊗n}⊗V^{⊗n}`.
pub fn ybe_certificate(s: &QMatrix) -> Result<Certificate, VerifyError> {
    let start = Instant::now();
    if !s.family.is_pair() {
        return Err(VerifyError::BadParameter(format!("{} is not an S matrix", s.family)));
    }
    let n = s.n;
    let (base, _) = numerators(s)?;
    let sx = PolyOp::at(&base, 1, 0);
    let sy = PolyOp::at(&base, 0, 1);
    let sxy = PolyOp::at(&base, 1, 1);
    let dim = 1u32 << n;
    let inputs: Vec<Vec<u32>> = (0..dim).flat_map(|a| (0..dim).flat_map(move |b| (0..dim).map(move |c| vec![a, b, c]))).collect();
    let failures: Vec<String> = inputs
        .par_iter()
        .filter_map(|inp| {
            let v = BasisTensor::basis(inp);
            let lhs = sx.apply_pair(&sxy.apply_pair(&sy.apply_pair(&v, 1, 2), 0, 2), 0, 1);
            let rhs = sy.apply_pair(&sxy.apply_pair(&sx.apply_pair(&v, 0, 1), 0, 2), 1, 2);
            diff_witness(&format!("input {}", fmt_key(inp, n)), &lhs, &rhs)
        })
        .collect();
    let params = json!({"family": s.family.to_string(), "n": n});
    Ok(Certificate::finish("ybe", params, inputs.len(), failures, start))
}

pub fn check_ybe(family: Family, n: usize) -> Result<Certificate, VerifyError> {
    ybe_certificate(&build(n, family)?)
}

/// Whether `(S, K)` appear together in the reflection equation.
pub fn admissible(s: Family, k: Family) -> bool {
    match (s, k) {
        (Family::STrace, Family::KTrace) => true,
        (Family::SBoundary { s, sp }, Family::KBoundary { k, kp }) => s <= k && sp <= kp,
        _ => false,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReDomain {
    /// Independent `x` and `y`.
    Generic,
    /// `x = y`.
    Diagonal,
}

/// `S_12(x/y) K_2(x) S_21(xy) K_1(y) = K_1(y) S_12(xy) K_2(x) S_21(x/y)` on every basis vector of `V^{⊗n}⊗V^{⊗n}`.
pub fn re_certificate(s: &QMatrix, k: &QMatrix, domain: ReDomain) -> Result<Certificate, VerifyError> {
    let start = Instant::now();
    if s.n != k.n || !s.family.is_pair() || k.family.is_pair() {
        return Err(VerifyError::BadParameter("need an S and a K matrix of equal size".into()));
    }
    let n = s.n;
    let (sb, _) = numerators(s)?;
    let (kb, _) = numerators(k)?;
    let (ratio, prod, kx, ky) = match domain {
        ReDomain::Generic => ((1, -1), (1, 1), (1, 0), (0, 1)),
        ReDomain::Diagonal => ((0, 0), (2, 0), (1, 0), (1, 0)),
    };
    let s_ratio = PolyOp::at(&sb, ratio.0, ratio.1);
    let s_prod = PolyOp::at(&sb, prod.0, prod.1);
    let k_x = PolyOp::at(&kb, kx.0, kx.1);
    let k_y = PolyOp::at(&kb, ky.0, ky.1);
    let dim = 1u32 << n;
    let inputs: Vec<Vec<u32>> = (0..dim).flat_map(|a| (0..dim).map(move |b| vec![a, b])).collect();
    let failures: Vec<String> = inputs
        .par_iter()
        .filter_map(|inp| {
            let v = BasisTensor::basis(inp);
            let lhs = k_y.apply_single(&v, 0);
            let lhs = s_prod.apply_pair(&lhs, 1, 0);
            let lhs = k_x.apply_single(&lhs, 1);
            let lhs = s_ratio.apply_pair(&lhs, 0, 1);
            let rhs = s_ratio.apply_pair(&v, 1, 0);
            let rhs = k_x.apply_single(&rhs, 1);
            let rhs = s_prod.apply_pair(&rhs, 0, 1);
            let rhs = k_y.apply_single(&rhs, 0);
            diff_witness(&format!("input {}", fmt_key(inp, n)), &lhs, &rhs)
        })
        .collect();
    let params = json!({
        "s_family": s.family.to_string(),
        "k_family": k.family.to_string(),
        "n": n,
        "domain": if domain == ReDomain::Generic { "generic" } else { "x=y" },
    });
    Ok(Certificate::finish("re", params, inputs.len(), failures, start))
}

pub fn check_re(s: Family, k: Family, n: usize) -> Result<Certificate, VerifyError> {
    if !admissible(s, k) {
        return Err(VerifyError::InadmissiblePair { s: s.to_string(), k: k.to_string() });
    }
    re_certificate(&build(n, s)?, &build(n, k)?, ReDomain::Generic)
}

/// All `(S, K)` pairs entering the reflection equation.
pub fn admissible_pairs() -> Vec<(Family, Family)> {
    let mut out = vec![(Family::STrace, Family::KTrace)];
    for (s, k) in [(1, 1), (1, 2), (2, 2)] {
        for (sp, kp) in [(1, 1), (1, 2), (2, 2)] {
            out.push((Family::SBoundary { s, sp }, Family::KBoundary { k, kp }));
        }
    }
    out
}

/// Fock basis tuples of `slots` entries with total degree at most `n`.
pub fn fock_tuples(slots: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..slots {
        out = out
            .into_iter()
            .flat_map(|t: Vec<u32>| {
                let used: u32 = t.iter().sum();
                (0..=(n - used)).map(move |m| {
                    let mut t = t.clone();
                    t.push(m);
                    t
                })
            })
            .collect();
    }
    out
}

fn bits_label(b: &[u32]) -> String {
    b.iter().map(|x| x.to_string()).collect()
}

/// Splits a vector by the labels of the first `nv` (two-dimensional) slots.
fn by_v_label(t: &BasisTensor, nv: usize) -> BTreeMap<Vec<u32>, BasisTensor> {
    let mut out: BTreeMap<Vec<u32>, BasisTensor> = BTreeMap::new();
    for (k, p) in &t.amps {
        out.entry(k[..nv].to_vec()).or_default().add(k.clone(), p.clone());
    }
    out
}

/// Componentwise comparison for operators on `V^{⊗nv} ⊗ (Fock)^{nf}`: `lhs`/`rhs` map a basis vector to its image.
fn component_check(
    nv: usize,
    nf: usize,
    degree: u32,
    label: impl Fn(&[u32], &[u32]) -> String + Sync,
    wanted: &(dyn Fn(&str) -> bool + Sync),
    lhs: impl Fn(&BasisTensor) -> BasisTensor + Sync,
    rhs: impl Fn(&BasisTensor) -> BasisTensor + Sync,
) -> (usize, Vec<String>, BTreeMap<String, bool>) {
    let vin: Vec<Vec<u32>> = (0..(1u32 << nv)).map(|b| (0..nv).map(|j| (b >> (nv - 1 - j)) & 1).collect()).collect();
    let fock = fock_tuples(nf, degree);
    let jobs: Vec<(Vec<u32>, Vec<u32>)> = vin.iter().flat_map(|v| fock.iter().map(move |f| (v.clone(), f.clone()))).collect();
    let results: Vec<JobResult> = jobs
        .par_iter()
        .map(|(v, f)| {
            let mut key = v.clone();
            key.extend(f);
            let b = BasisTensor::basis(&key);
            let l = by_v_label(&lhs(&b), nv);
            let r = by_v_label(&rhs(&b), nv);
            let mut checked = 0;
            let mut fails = Vec::new();
            let mut comps = Vec::new();
            for out in &vin {
                let name = label(out, v);
                if !wanted(&name) {
                    continue;
                }
                checked += 1;
                let empty = BasisTensor::default();
                let lo = l.get(out).unwrap_or(&empty);
                let ro = r.get(out).unwrap_or(&empty);
                let ok = match diff_witness(&format!("component {} on Fock {:?}", name, f), lo, ro) {
                    None => true,
                    Some(w) => {
                        fails.push(w);
                        false
                    }
                };
                comps.push((name, ok));
            }
            (checked, fails, comps)
        })
        .collect();
    let mut checked = 0;
    let mut fails = Vec::new();
    let mut comps: BTreeMap<String, bool> = BTreeMap::new();
    for (c, f, cs) in results {
        checked += c;
        fails.extend(f);
        for (name, ok) in cs {
            let e = comps.entry(name).or_insert(true);
            *e &= ok;
        }
    }
    (checked, fails, comps)
}

/// The quantized reflection equation
/// `L_123 K_24 L_215 K_16 𝒦_3456 = 𝒦_3456 K_16 L_125 K_24 L_213`
/// on `V ⊗ V ⊗ F_{q²} ⊗ F_q ⊗ F_{q²} ⊗ F_q`, for Fock inputs of total degree `≤ degree`.
/// Component `abij` is the coefficient of `v_j ⊗ v_i ↦ v_b ⊗ v_a` on `V ⊗ V`;
/// `components` restricts the check to the listed labels.
pub fn check_quantized_re(degree: u32, components: Option<&[&str]>) -> Certificate {
    let start = Instant::now();
    let wanted = |name: &str| components.map(|c| c.contains(&name)).unwrap_or(true);
    let (checked, fails, comps) = component_check(
        2,
        4,
        degree,
        |out, inp| format!("{}{}{}{}", out[1], out[0], inp[1], inp[0]),
        &wanted,
        |b| {
            let t = b.apply_k3d([2, 3, 4, 5]);
            let t = t.apply_local_k(0, 5);
            let t = t.apply_local_l([1, 0], 4);
            let t = t.apply_local_k(1, 3);
            t.apply_local_l([0, 1], 2)
        },
        |b| {
            let t = b.apply_local_l([1, 0], 2);
            let t = t.apply_local_k(1, 3);
            let t = t.apply_local_l([0, 1], 4);
            let t = t.apply_local_k(0, 5);
            t.apply_k3d([2, 3, 4, 5])
        },
    );
    let params = json!({"degree": degree, "components": comps});
    Certificate::finish("quantized_re", params, checked, fails, start)
}

/// `L_124 L_135 L_236 𝓡_456 = 𝓡_456 L_236 L_135 L_124` on `V^{⊗3} ⊗ F_{q²}^{⊗3}`, Fock inputs of degree `≤ degree`.
pub fn check_rlll(degree: u32) -> Certificate {
    let start = Instant::now();
    let (checked, fails, comps) = component_check(
        3,
        3,
        degree,
        |out, inp| format!("{}<-{}", bits_label(out), bits_label(inp)),
        &|_| true,
        |b| {
            let t = b.apply_r3d([3, 4, 5], true);
            let t = t.apply_local_l([1, 2], 5);
            let t = t.apply_local_l([0, 2], 4);
            t.apply_local_l([0, 1], 3)
        },
        |b| {
            let t = b.apply_local_l([0, 1], 3);
            let t = t.apply_local_l([0, 2], 4);
            let t = t.apply_local_l([1, 2], 5);
            t.apply_r3d([3, 4, 5], true)
        },
    );
    let passed = comps.values().filter(|ok| **ok).count();
    let params = json!({"degree": degree, "components": comps.len(), "components_passed": passed});
    Certificate::finish("rlll", params, checked, fails, start)
}

type Term = (i64, [Option<Generator>; 3]);

fn apply_terms(v: &BasisTensor, terms: &[Term]) -> BasisTensor {
    let mut out = BasisTensor::default();
    for (c, gens) in terms {
        let mut t = v.clone();
        for (site, g) in gens.iter().enumerate() {
            if let Some(g) = g {
                t = t.apply_word(site, &OperatorWord::letter(Algebra::Single, g.clone()));
            }
        }
        out.add_tensor(&t.scale(&Poly::constant(crate::scalar::GInt::real(*c))));
    }
    out
}

/// The nine intertwining relations of `R̂` with the q-boson generators, checked on `F_q^{⊗3}` inputs of degree `≤ degree`.
pub fn check_r3d_relations(degree: u32) -> Certificate {
    use Generator::{KDiag as K, Lower as M, Raise as P};
    let start = Instant::now();
    let one = |g: [Option<Generator>; 3]| vec![(1i64, g)];
    let mut eqs: Vec<(String, Vec<Term>, Vec<Term>)> = Vec::new();
    for (sgn, a, abar) in [("+", P, M), ("-", M, P)] {
        eqs.push((
            format!("a{sgn} k 1"),
            one([Some(a.clone()), Some(K), None]),
            vec![(1, [Some(a.clone()), None, Some(K)]), (1, [Some(K), Some(a.clone()), Some(abar.clone())])],
        ));
        eqs.push((
            format!("1 k a{sgn}"),
            one([None, Some(K), Some(a.clone())]),
            vec![(1, [Some(K), None, Some(a.clone())]), (1, [Some(abar.clone()), Some(a.clone()), Some(K)])],
        ));
        eqs.push((
            format!("1 a{sgn} 1"),
            one([None, Some(a.clone()), None]),
            vec![(1, [Some(a.clone()), None, Some(a.clone())]), (-1, [Some(K), Some(a.clone()), Some(K)])],
        ));
    }
    eqs.push((
        "a+ a- a+".into(),
        vec![(1, [Some(P), Some(M), Some(P)]), (-1, [Some(K), None, Some(K)])],
        vec![(1, [Some(M), Some(P), Some(M)]), (-1, [Some(K), None, Some(K)])],
    ));
    eqs.push(("k k 1".into(), one([Some(K), Some(K), None]), one([Some(K), Some(K), None])));
    eqs.push(("1 k k".into(), one([None, Some(K), Some(K)]), one([None, Some(K), Some(K)])));
    let inputs = fock_tuples(3, degree);
    let mut fails = Vec::new();
    let mut per_eq = BTreeMap::new();
    for (name, x, y) in &eqs {
        let f: Vec<String> = inputs
            .par_iter()
            .filter_map(|inp| {
                let b = BasisTensor::basis(inp);
                let lhs = apply_terms(&b, x).apply_r3d([0, 1, 2], false);
                let rhs = apply_terms(&b.apply_r3d([0, 1, 2], false), y);
                diff_witness(&format!("relation [{}] on {:?}", name, inp), &lhs, &rhs)
            })
            .collect();
        per_eq.insert(name.clone(), f.is_empty());
        fails.extend(f);
    }
    let params = json!({"degree": degree, "relations": per_eq});
    Certificate::finish("r3d_relations", params, inputs.len() * eqs.len(), fails, start)
}

/// Which boundary eigenrelation to certify.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EigenKind {
    /// `𝓡` fixes `χ_s ⊗ χ_s ⊗ χ_s` (ket and bra).
    R { s: u8 },
    /// `𝒦` fixes `χ_s ⊗ η_k ⊗ χ_s ⊗ η_k` (ket and bra).
    K { s: u8, k: u8 },
}

fn coeffs(kind: BoundaryKind, s: u8, n: u32) -> Result<Vec<RatFun>, VerifyError> {
    let v = boundary_vector(kind, s, n as u64).map_err(|e| VerifyError::BadParameter(e.to_string()))?;
    Ok((0..=n as u64).map(|m| v.amp(m).rat().clone()).collect())
}

fn norms(alg: Algebra, n: u32) -> Vec<RatFun> {
    (0..=n as u64).map(|m| crate::qboson::TruncatedState::norm_sq(alg, m).rat().clone()).collect()
}

/// Exact componentwise check of a boundary eigenrelation on every ket and bra component of total degree `≤ degree`.
pub fn check_boundary_eigen(kind: EigenKind, degree: u32) -> Result<Certificate, VerifyError> {
    let start = Instant::now();
    let (slots, algs, ids): (usize, Vec<Algebra>, Vec<(BoundaryKind, u8)>) = match kind {
        EigenKind::R { s } => (3, vec![Algebra::Doubled; 3], vec![(BoundaryKind::Chi, s); 3]),
        EigenKind::K { s, k } => {
            if s > k {
                return Err(VerifyError::BadParameter(format!("need s <= k, got ({}, {})", s, k)));
            }
            let a = vec![Algebra::Doubled, Algebra::Single, Algebra::Doubled, Algebra::Single];
            let i = vec![(BoundaryKind::Chi, s), (BoundaryKind::Eta, k), (BoundaryKind::Chi, s), (BoundaryKind::Eta, k)];
            (4, a, i)
        }
    };
    // an output index of degree d can be reached from inputs of degree up to 2d
    let reach = 2 * degree + 2;
    let vecs: Vec<Vec<RatFun>> = ids.iter().map(|(b, s)| coeffs(*b, *s, reach)).collect::<Result<_, _>>()?;
    let nrm: Vec<Vec<RatFun>> = algs.iter().map(|a| norms(*a, reach)).collect();
    let weight = |key: &[u32], with_norm: bool| -> RatFun {
        let mut w = RatFun::one();
        for (slot, &m) in key.iter().enumerate() {
            w = w.mul(&vecs[slot][m as usize]);
            if with_norm {
                w = w.mul(&nrm[slot][m as usize]);
            }
        }
        w
    };
    let element = |out: &[u32], inp: &[u32]| -> Poly {
        match kind {
            EigenKind::R { .. } => double_q(&r3d_poly([out[0], out[1], out[2], inp[0], inp[1], inp[2]])),
            EigenKind::K { .. } => k3d_poly([out[0], out[1], out[2], out[3], inp[0], inp[1], inp[2], inp[3]]),
        }
    };
    // inputs sharing the conserved weights of `t`
    let partners = |t: &[u32]| -> Vec<Vec<u32>> {
        match kind {
            EigenKind::R { .. } => {
                let (s1, s2) = (t[0] + t[1], t[1] + t[2]);
                (0..=s1.min(s2)).map(|j| vec![s1 - j, j, s2 - j]).collect()
            }
            EigenKind::K { .. } => {
                let s = t[0] + t[1] + t[2];
                let w = t[1] + 2 * t[2] + t[3];
                let mut v = Vec::new();
                for k in 0..=s.min(w / 2) {
                    for j in 0..=(s - k).min(w - 2 * k) {
                        v.push(vec![s - j - k, j, k, w - j - 2 * k]);
                    }
                }
                v
            }
        }
    };
    let comps = fock_tuples(slots, degree);
    let fails: Vec<String> = comps
        .par_iter()
        .flat_map_iter(|t| {
            let mut out = Vec::new();
            let mut ket = RatFun::zero();
            let mut bra = RatFun::zero();
            for p in partners(t) {
                let e = element(t, &p);
                if !e.is_zero() {
                    ket = ket.add(&weight(&p, false).mul(&RatFun::from_poly(e)));
                }
                let e = element(&p, t);
                if !e.is_zero() {
                    bra = bra.add(&weight(&p, true).mul(&RatFun::from_poly(e)));
                }
            }
            if ket != weight(t, false) {
                out.push(format!("ket component {:?}", t));
            }
            if bra != weight(t, true) {
                out.push(format!("bra component {:?}", t));
            }
            out
        })
        .collect();
    let (identity, params) = match kind {
        EigenKind::R { s } => ("boundary_eigen_r", json!({"s": s, "degree": degree})),
        EigenKind::K { s, k } => ("boundary_eigen_k", json!({"s": s, "k": k, "degree": degree, "status_in_literature": "conjecture"})),
    };
    Ok(Certificate::finish(identity, params, 2 * comps.len(), fails, start))
}

/// A spot check: an input basis tuple and optionally a single output tuple to compare.
pub type Spot = (Vec<u32>, Option<Vec<u32>>);

fn spot_check(
    identity: &str,
    slots: usize,
    spots: &[Spot],
    lhs: impl Fn(&BasisTensor) -> BasisTensor + Sync,
    rhs: impl Fn(&BasisTensor) -> BasisTensor + Sync,
) -> Result<Certificate, VerifyError> {
    let start = Instant::now();
    for (i, o) in spots {
        if i.len() != slots || o.as_ref().is_some_and(|o| o.len() != slots) {
            return Err(VerifyError::BadParameter(format!("{} expects {} indices per tuple", identity, slots)));
        }
    }
    let fails: Vec<String> = spots
        .par_iter()
        .filter_map(|(inp, out)| {
            let b = BasisTensor::basis(inp);
            let (l, r) = (lhs(&b), rhs(&b));
            match out {
                None => diff_witness(&format!("input {:?}", inp), &l, &r),
                Some(o) => {
                    let lv = l.amps.get(o).cloned().unwrap_or_else(Poly::zero);
                    let rv = r.amps.get(o).cloned().unwrap_or_else(Poly::zero);
                    (lv != rv).then(|| format!("input {:?} output {:?}: {} vs {}", inp, o, lv, rv))
                }
            }
        })
        .collect();
    let params = json!({"spots": spots.iter().map(|(i, o)| json!({"in": i, "out": o})).collect::<Vec<_>>()});
    Ok(Certificate::finish(identity, params, spots.len(), fails, start))
}

/// `R̂_124 R̂_135 R̂_236 R̂_456 = R̂_456 R̂_236 R̂_135 R̂_124` on chosen basis tuples of `F_q^{⊗6}`.
pub fn check_tetra_spot(spots: &[Spot]) -> Result<Certificate, VerifyError> {
    let r = |t: &BasisTensor, s: [usize; 3]| t.apply_r3d(s, false);
    spot_check(
        "tetrahedron",
        6,
        spots,
        |b| r(&r(&r(&r(b, [3, 4, 5]), [1, 2, 5]), [0, 2, 4]), [0, 1, 3]),
        |b| r(&r(&r(&r(b, [0, 1, 3]), [0, 2, 4]), [1, 2, 5]), [3, 4, 5]),
    )
}

/// `R̂_456 R̂_489 𝒦_3579 R̂_269 R̂_258 𝒦_1678 𝒦_1234 = 𝒦_1234 𝒦_1678 R̂_258 R̂_269 𝒦_3579 R̂_489 R̂_456`
/// on chosen basis tuples of nine Fock spaces (slots 1, 3, 7 carry `F_{q²}`).
pub fn check_3dre_spot(spots: &[Spot]) -> Result<Certificate, VerifyError> {
    let r = |t: &BasisTensor, s: [usize; 3]| t.apply_r3d(s.map(|i| i - 1), false);
    let k = |t: &BasisTensor, s: [usize; 4]| t.apply_k3d(s.map(|i| i - 1));
    spot_check(
        "3d_reflection",
        9,
        spots,
        |b| {
            let t = k(&k(b, [1, 2, 3, 4]), [1, 6, 7, 8]);
            let t = r(&r(&t, [2, 5, 8]), [2, 6, 9]);
            let t = k(&t, [3, 5, 7, 9]);
            r(&r(&t, [4, 8, 9]), [4, 5, 6])
        },
        |b| {
            let t = r(&r(b, [4, 5, 6]), [4, 8, 9]);
            let t = k(&t, [3, 5, 7, 9]);
            let t = r(&r(&t, [2, 6, 9]), [2, 5, 8]);
            k(&k(&t, [1, 6, 7, 8]), [1, 2, 3, 4])
        },
    )
}

/// Replaces one entry of a matrix, for negative controls.
pub fn perturbed(m: &QMatrix, row: Basis, col: Basis, delta: &ExactScalar) -> Result<QMatrix, ScalarError> {
    let mut out = m.clone();
    let v = m.get(&row, &col).try_add(delta)?;
    out.insert(row, col, v);
    Ok(out)
}

/// `R̂² = id` on `F_q^{⊗3}` inputs with `i+j+k ≤ r_degree`, and `𝒦² = id` on inputs
/// with `i+j+k ≤ k_degree`, `l ≤ l_max`.
pub fn check_involution(r_degree: u32, k_degree: u32, l_max: u32) -> Certificate {
    let start = Instant::now();
    let r_inputs = fock_tuples(3, r_degree);
    let k_inputs: Vec<Vec<u32>> = fock_tuples(3, k_degree)
        .into_iter()
        .flat_map(|t| {
            (0..=l_max).map(move |l| {
                let mut t = t.clone();
                t.push(l);
                t
            })
        })
        .collect();
    let mut fails: Vec<String> = r_inputs
        .par_iter()
        .filter_map(|i| {
            let b = BasisTensor::basis(i);
            diff_witness(&format!("R̂² on {:?}", i), &b.apply_r3d([0, 1, 2], false).apply_r3d([0, 1, 2], false), &b)
        })
        .collect();
    fails.extend(
        k_inputs
            .par_iter()
            .filter_map(|i| {
                let b = BasisTensor::basis(i);
                diff_witness(&format!("𝒦² on {:?}", i), &b.apply_k3d([0, 1, 2, 3]).apply_k3d([0, 1, 2, 3]), &b)
            })
            .collect::<Vec<_>>(),
    );
    let params = json!({"r_degree": r_degree, "k_degree": k_degree, "l_max": l_max});
    Certificate::finish("involution", params, r_inputs.len() + k_inputs.len(), fails, start)
}
