//! Chevalley generators of the quantum affine algebras behind `S^tr` and
//! `S^{s,s'}`, their coproduct on a tensor square, and the intertwining check
//! `Δ'(g) R = R Δ(g)`.
//!
//! Matrices have Laurent polynomial entries over `Z[i]`; the quantum group
//! parameter is fixed to `p = ±i q^{-1}` (for types A and D1 only `p² = -q^{-2}`
//! enters).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::matprod::{Block, Family, Parity, QMatrix};
use crate::scalar::{gcd, GInt, Poly, Var, NVARS};
use crate::verify::{Certificate, VerifyError};

#[derive(Debug, Error)]
pub enum UqError {
    #[error("{family} is not the R matrix of {algebra}")]
    SpecializationMismatch { family: String, algebra: String },
    #[error("node {node} out of range for {algebra}")]
    BadNode { node: usize, algebra: String },
    #[error("{0}")]
    BadParameter(String),
}

impl From<UqError> for VerifyError {
    fn from(e: UqError) -> Self {
        VerifyError::BadParameter(e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AlgebraType {
    /// `A^{(1)}_{n-1}` on `V_l`.
    A,
    /// `D^{(2)}_{n+1}`.
    D2,
    /// `B^{(1)}_n`.
    B,
    /// `B^{(1)}_n` with the reversed node labelling.
    Btilde,
    /// `D^{(1)}_n`, restricted to `V^±`.
    D1,
}

impl AlgebraType {
    pub const ALL: [AlgebraType; 5] = [AlgebraType::A, AlgebraType::D2, AlgebraType::B, AlgebraType::Btilde, AlgebraType::D1];

    pub fn parse(s: &str) -> Option<AlgebraType> {
        Some(match s {
            "A" => AlgebraType::A,
            "D2" => AlgebraType::D2,
            "B" => AlgebraType::B,
            "Btilde" => AlgebraType::Btilde,
            "D1" => AlgebraType::D1,
            _ => return None,
        })
    }

    /// Power `u` with `S(z) = R(z^u)` for the identified family.
    pub fn spectral_power(self) -> i32 {
        match self {
            AlgebraType::B | AlgebraType::D1 => 2,
            _ => 1,
        }
    }

    /// The S family identified with this algebra's R matrix.
    pub fn family(self) -> Family {
        match self {
            AlgebraType::A => Family::STrace,
            AlgebraType::D2 => Family::SBoundary { s: 1, sp: 1 },
            AlgebraType::B => Family::SBoundary { s: 2, sp: 1 },
            AlgebraType::Btilde => Family::SBoundary { s: 1, sp: 2 },
            AlgebraType::D1 => Family::SBoundary { s: 2, sp: 2 },
        }
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraType::A => "A",
            AlgebraType::D2 => "D2",
            AlgebraType::B => "B",
            AlgebraType::Btilde => "Btilde",
            AlgebraType::D1 => "D1",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AlgebraSpec {
    pub kind: AlgebraType,
    /// Number of tensor sites of `V`.
    pub n: usize,
    /// `p = sign · i q^{-1}`.
    pub sign: i8,
}

impl AlgebraSpec {
    pub fn new(kind: AlgebraType, n: usize) -> Result<Self, UqError> {
        let min = if kind == AlgebraType::D2 { 1 } else { 2 };
        if n < min || n > 16 {
            return Err(UqError::BadParameter(format!("{} needs {} <= n <= 16, got {}", kind, min, n)));
        }
        Ok(AlgebraSpec { kind, n, sign: 1 })
    }

    pub fn with_sign(mut self, sign: i8) -> Self {
        self.sign = if sign < 0 { -1 } else { 1 };
        self
    }

    pub fn p_rule(&self) -> &'static str {
        match (self.kind, self.sign) {
            (AlgebraType::A | AlgebraType::D1, _) => "p^2 = -q^-2",
            (_, 1) => "p = i q^-1",
            _ => "p = -i q^-1",
        }
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        match self.kind {
            AlgebraType::A => 0..self.n,
            _ => 0..self.n + 1,
        }
    }

    /// Whether `p_j = p` rather than `p²`.
    pub fn is_short(&self, j: usize) -> bool {
        match self.kind {
            AlgebraType::D2 => j == 0 || j == self.n,
            AlgebraType::B => j == self.n,
            AlgebraType::Btilde => j == 0,
            _ => false,
        }
    }

    /// `p^m` as a monomial.
    pub fn p_pow(&self, m: i32) -> Poly {
        let unit = GInt::i().pow(m.rem_euclid(4) as u32);
        let unit = if self.sign < 0 && m % 2 != 0 { unit.scale(&(-1).into()) } else { unit };
        Poly::monomial(exps_q(-m), unit)
    }

    pub fn p_node_pow(&self, j: usize, m: i32) -> Poly {
        self.p_pow(if self.is_short(j) { m } else { 2 * m })
    }
}

fn exps_q(k: i32) -> [i32; NVARS] {
    let mut e = [0; NVARS];
    e[Var::Q as usize] = 2 * k;
    e
}

fn z_pow(z: Var, k: i32) -> Poly {
    Poly::var_pow(z, k)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Chevalley {
    E,
    F,
    K,
    KInv,
}

impl Chevalley {
    pub const ALL: [Chevalley; 4] = [Chevalley::E, Chevalley::F, Chevalley::K, Chevalley::KInv];
}

impl fmt::Display for Chevalley {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chevalley::E => "e",
            Chevalley::F => "f",
            Chevalley::K => "k",
            Chevalley::KInv => "k^-1",
        })
    }
}

/// A generator acting on `V^{⊗n}`; columns map a basis index to its image.
#[derive(Clone, Debug, PartialEq)]
pub struct RepAction {
    pub generator: Chevalley,
    pub node: usize,
    pub spectral: Var,
    pub n: usize,
    pub entries: BTreeMap<(u32, u32), Poly>,
}

impl RepAction {
    pub fn get(&self, row: u32, col: u32) -> Poly {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Poly::zero)
    }

    fn column(&self, col: u32) -> impl Iterator<Item = (u32, &Poly)> {
        self.entries.range((0, col)..).filter(move |((_, c), _)| *c == col).map(|((r, _), p)| (*r, p))
    }
}

fn bit(a: u32, n: usize, j: usize) -> i32 {
    ((a >> (n - j)) & 1) as i32
}

/// Adds `delta[j]` to `α_j` (1-based); `None` if a coordinate leaves `{0,1}`.
fn shift(a: u32, n: usize, delta: &[(usize, i32)]) -> Option<u32> {
    let mut out = a;
    for &(j, d) in delta {
        let v = ((out >> (n - j)) & 1) as i32 + d;
        if !(0..=1).contains(&v) {
            return None;
        }
        out ^= ((v ^ bit(out, n, j)) as u32) << (n - j);
    }
    Some(out)
}

/// Image of one basis vector: `(target, coefficient)` or nothing.
fn act(spec: &AlgebraSpec, gen: Chevalley, j: usize, z: Var, zscale: i32, a: u32) -> Option<(u32, Poly)> {
    let n = spec.n;
    let al = |i: usize| bit(a, n, i);
    let k = |m: i32| match gen {
        Chevalley::K => Some((a, spec.p_pow(m))),
        Chevalley::KInv => Some((a, spec.p_pow(-m))),
        _ => None,
    };
    let ef = |plus: &[(usize, i32)], zk: i32| -> Option<(u32, Poly)> {
        match gen {
            Chevalley::E => shift(a, n, plus).map(|t| (t, z_pow(z, zscale * zk))),
            Chevalley::F => {
                let minus: Vec<(usize, i32)> = plus.iter().map(|&(i, d)| (i, -d)).collect();
                shift(a, n, &minus).map(|t| (t, z_pow(z, -zscale * zk)))
            }
            _ => None,
        }
    };
    use AlgebraType::*;
    match (spec.kind, j) {
        (A, _) => {
            let (lo, hi) = if j == 0 { (n, 1) } else { (j, j + 1) };
            let zk = if j == 0 { 1 } else { 0 };
            if matches!(gen, Chevalley::K | Chevalley::KInv) {
                k(2 * (al(hi) - al(lo)))
            } else if lo == hi {
                None
            } else {
                ef(&[(lo, -1), (hi, 1)], zk)
            }
        }
        (_, j) if 0 < j && j < n => {
            if matches!(gen, Chevalley::K | Chevalley::KInv) {
                k(2 * (al(j + 1) - al(j)))
            } else {
                ef(&[(j, -1), (j + 1, 1)], 0)
            }
        }
        (D2 | Btilde, 0) => match gen {
            Chevalley::K | Chevalley::KInv => k(2 * al(1) - 1),
            _ => ef(&[(1, 1)], 1),
        },
        (B | D1, 0) => match gen {
            Chevalley::K | Chevalley::KInv => k(2 * (al(1) + al(2) - 1)),
            _ => ef(&[(1, 1), (2, 1)], 1),
        },
        (D2 | B, _) => match gen {
            Chevalley::K | Chevalley::KInv => k(1 - 2 * al(n)),
            _ => ef(&[(n, -1)], 0),
        },
        (Btilde | D1, _) => match gen {
            Chevalley::K | Chevalley::KInv => k(2 * (1 - al(n) - al(n - 1))),
            _ => ef(&[(n - 1, -1), (n, -1)], 0),
        },
    }
}

/// The matrix of `π_z(g_j)` on `V^{⊗n}`; type A preserves every `V_l`, type D1 every `V^±`.
pub fn rep_generator(spec: &AlgebraSpec, gen: Chevalley, j: usize, z: Var) -> Result<RepAction, UqError> {
    rep_generator_at(spec, gen, j, z, 1)
}

/// As [`rep_generator`] with the spectral parameter replaced by `z^zscale`.
fn rep_generator_at(spec: &AlgebraSpec, gen: Chevalley, j: usize, z: Var, zscale: i32) -> Result<RepAction, UqError> {
    if !spec.nodes().contains(&j) {
        return Err(UqError::BadNode { node: j, algebra: spec.kind.to_string() });
    }
    let mut entries = BTreeMap::new();
    for a in 0..(1u32 << spec.n) {
        if let Some((t, c)) = act(spec, gen, j, z, zscale, a) {
            entries.insert((t, a), c);
        }
    }
    Ok(RepAction { generator: gen, node: j, spectral: z, n: spec.n, entries })
}

/// Matrix on `V^{⊗n} ⊗ V^{⊗n}` keyed by pairs of basis indices.
pub type PairMatrix = BTreeMap<((u32, u32), (u32, u32)), Poly>;
type ByColumn = HashMap<(u32, u32), Vec<((u32, u32), Poly)>>;

/// `Δ_{x,y}(g)` (or `Δ'_{x,y}(g)` when `opposite`) on the tensor square.
pub fn coproduct_action(spec: &AlgebraSpec, gen: Chevalley, j: usize, x: Var, y: Var, opposite: bool) -> Result<PairMatrix, UqError> {
    coproduct_at(spec, gen, j, x, y, opposite, 1)
}

fn coproduct_at(spec: &AlgebraSpec, gen: Chevalley, j: usize, x: Var, y: Var, opposite: bool, zscale: i32) -> Result<PairMatrix, UqError> {
    let g = |v: Var| rep_generator_at(spec, gen, j, v, zscale);
    let k = |v: Var| rep_generator_at(spec, Chevalley::K, j, v, zscale);
    let kinv = |v: Var| rep_generator_at(spec, Chevalley::KInv, j, v, zscale);
    // Δ as a sum of simple tensors (first factor, second factor)
    let terms: Vec<(Option<RepAction>, Option<RepAction>)> = match gen {
        Chevalley::K | Chevalley::KInv => vec![(Some(g(x)?), Some(g(y)?))],
        Chevalley::E if !opposite => vec![(None, Some(g(y)?)), (Some(g(x)?), Some(k(y)?))],
        Chevalley::E => vec![(Some(g(x)?), None), (Some(k(x)?), Some(g(y)?))],
        Chevalley::F if !opposite => vec![(Some(g(x)?), None), (Some(kinv(x)?), Some(g(y)?))],
        Chevalley::F => vec![(None, Some(g(y)?)), (Some(g(x)?), Some(kinv(y)?))],
    };
    let dim = 1u32 << spec.n;
    let mut out: PairMatrix = BTreeMap::new();
    let ident = |a: u32| vec![(a, Poly::one())];
    let img = |m: &Option<RepAction>, a: u32| match m {
        None => ident(a),
        Some(m) => m.column(a).map(|(r, p)| (r, p.clone())).collect(),
    };
    for (t1, t2) in &terms {
        for a in 0..dim {
            for b in 0..dim {
                for (r1, p1) in img(t1, a) {
                    for (r2, p2) in img(t2, b) {
                        let e = out.entry(((r1, r2), (a, b))).or_insert_with(Poly::zero);
                        *e = e.add(&p1.mul(&p2));
                    }
                }
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// `ℐ_±|α⟩ = (±i)^{|α|}|α⟩`, as the scalar for a basis index.
pub fn gauge(sign: i8, a: u32) -> GInt {
    let w = a.count_ones();
    let u = if sign < 0 { GInt::i().conj() } else { GInt::i() };
    u.pow(w)
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    a.try_div(&gcd(a, b)).expect("gcd divides").mul(b)
}

fn matmul_apply(m: &ByColumn, v: &BTreeMap<(u32, u32), Poly>) -> BTreeMap<(u32, u32), Poly> {
    let mut out: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    for (k, c) in v {
        if let Some(img) = m.get(k) {
            for (r, p) in img {
                let e = out.entry(*r).or_insert_with(Poly::zero);
                *e = e.add(&c.mul(p));
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn by_column(m: &PairMatrix) -> ByColumn {
    let mut out: ByColumn = HashMap::new();
    for ((r, c), p) in m {
        out.entry(*c).or_default().push((*r, p.clone()));
    }
    out
}

/// Whether `R = S(x/y)` (gauge-conjugated for types other than A) intertwines
/// `Δ_{x,y}` with `Δ'_{x,y}` for every Chevalley generator, on the domain of `S`'s block.
pub fn check_intertwiner(spec: &AlgebraSpec, s: &QMatrix) -> Result<Certificate, VerifyError> {
    let start = Instant::now();
    if s.family != spec.kind.family() {
        return Err(UqError::SpecializationMismatch { family: s.family.to_string(), algebra: spec.kind.to_string() }.into());
    }
    if s.n != spec.n {
        return Err(VerifyError::BadParameter(format!("matrix has n={}, algebra n={}", s.n, spec.n)));
    }
    let n = spec.n;
    let dim = 1u32 << n;
    let weight = |a: u32| a.count_ones() as usize;
    let parity = |a: u32| if a.count_ones().is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    let in_domain = |a: u32, b: u32| match s.block {
        Block::Full => true,
        Block::Weights(l, m) => weight(a) == l && weight(b) == m,
        Block::Parities(x, y) => parity(a) == x && parity(b) == y,
        Block::Weight(_) | Block::Parity(_) => false,
    };
    // common-denominator numerator of S(z), then z = x/y and the gauge
    let mut den = Poly::one();
    for v in s.entries.values() {
        if !v.is_rational() {
            return Err(VerifyError::BadParameter("matrix entry is not rational".into()));
        }
        den = lcm(&den, v.rat().den());
    }
    let (xi, yi, zi) = (Var::X as usize, Var::Y as usize, Var::Z as usize);
    let mut rmat: PairMatrix = BTreeMap::new();
    for (row, col) in s.entries.keys() {
        let v = s.get(row, col);
        let f = den.try_div(v.rat().den()).expect("lcm is a multiple");
        let p = v.rat().num().mul(&f).map_exps(|e| {
            let mut e = *e;
            e[xi] += e[zi];
            e[yi] -= e[zi];
            e[zi] = 0;
            e
        });
        let ((g, d), (a, b)) = (row.pair(), col.pair());
        let p = if spec.kind == AlgebraType::A {
            p
        } else {
            // R = (ℐ ⊗ 1) S (1 ⊗ ℐ^{-1})
            p.scale(&gauge(spec.sign, g.index())).scale(&gauge(-spec.sign, b.index()))
        };
        rmat.insert(((g.index(), d.index()), (a.index(), b.index())), p);
    }
    let r = by_column(&rmat);
    // S^{2,s'}(z) is the R matrix at spectral parameter z²
    let zscale = spec.kind.spectral_power();
    let gens: Vec<(Chevalley, usize)> = spec.nodes().flat_map(|j| Chevalley::ALL.map(|g| (g, j))).collect();
    let inputs: Vec<(u32, u32)> = (0..dim).flat_map(|a| (0..dim).map(move |b| (a, b))).filter(|&(a, b)| in_domain(a, b)).collect();
    let results: Vec<(usize, Vec<String>)> = gens
        .par_iter()
        .map(|&(g, j)| {
            let delta = by_column(&coproduct_at(spec, g, j, Var::X, Var::Y, false, zscale).expect("node in range"));
            let opp = by_column(&coproduct_at(spec, g, j, Var::X, Var::Y, true, zscale).expect("node in range"));
            let mut fails = Vec::new();
            for &(a, b) in &inputs {
                let v: BTreeMap<(u32, u32), Poly> = [((a, b), Poly::one())].into();
                let lhs = matmul_apply(&opp, &matmul_apply(&r, &v));
                let rhs = matmul_apply(&r, &matmul_apply(&delta, &v));
                if lhs != rhs {
                    fails.push(format!("{}_{} on |{},{}⟩", g, j, fmt_bits(a, n), fmt_bits(b, n)));
                }
            }
            (inputs.len(), fails)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    let fails: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    let params = json!({
        "algebra": spec.kind.to_string(),
        "n": n,
        "p_rule": spec.p_rule(),
        "spectral": if zscale == 1 { "x/y" } else { "(x/y)^2" },
        "family": s.family.to_string(),
        "block": s.block.to_string(),
    });
    Ok(Certificate::finish("intertwiner", params, checked, fails, start))
}

fn fmt_bits(a: u32, n: usize) -> String {
    (1..=n).map(|j| if bit(a, n, j) == 1 { '1' } else { '0' }).collect()
}

/// Checks `k_j e_j k_j^{-1} = p_j² e_j`, `k_j f_j k_j^{-1} = p_j^{-2} f_j` and
/// `(p_j - p_j^{-1})[e_j, f_j] = k_j - k_j^{-1}` on `V^{⊗n}`; returns the failing relations.
pub fn check_cartan_relations(spec: &AlgebraSpec) -> Vec<String> {
    let mut fails = Vec::new();
    let z = Var::Z;
    for j in spec.nodes() {
        let m = |g| rep_generator(spec, g, j, z).expect("node in range");
        let (e, f, k, ki) = (m(Chevalley::E), m(Chevalley::F), m(Chevalley::K), m(Chevalley::KInv));
        let dim = 1u32 << spec.n;
        let pj = spec.p_node_pow(j, 1);
        let pj_inv = spec.p_node_pow(j, -1);
        for a in 0..dim {
            let kk = k.get(a, a).mul(&ki.get(a, a));
            if !kk.is_one() {
                fails.push(format!("k_{j} k_{j}^-1 != 1 on {}", fmt_bits(a, spec.n)));
            }
            for (g, pw) in [(&e, 2), (&f, -2)] {
                for (t, c) in g.column(a) {
                    let lhs = k.get(t, t).mul(c).mul(&ki.get(a, a));
                    if lhs != c.mul(&spec.p_node_pow(j, pw)) {
                        fails.push(format!("k_{j} {}_{j} k_{j}^-1 on {}", g.generator, fmt_bits(a, spec.n)));
                    }
                }
            }
            let mut comm: BTreeMap<u32, Poly> = BTreeMap::new();
            for (t, c) in f.column(a) {
                for (u, d) in e.column(t) {
                    let x = comm.entry(u).or_insert_with(Poly::zero);
                    *x = x.add(&c.mul(d));
                }
            }
            for (t, c) in e.column(a) {
                for (u, d) in f.column(t) {
                    let x = comm.entry(u).or_insert_with(Poly::zero);
                    *x = x.sub(&c.mul(d));
                }
            }
            let scale = pj.sub(&pj_inv);
            let mut lhs: BTreeMap<u32, Poly> = comm.into_iter().map(|(u, c)| (u, c.mul(&scale))).filter(|(_, c)| !c.is_zero()).collect();
            let diag = k.get(a, a).sub(&ki.get(a, a));
            let rhs = if diag.is_zero() { None } else { Some(diag) };
            let got = lhs.remove(&a);
            if got != rhs || !lhs.is_empty() {
                fails.push(format!("[e_{j}, f_{j}] on {}", fmt_bits(a, spec.n)));
            }
        }
    }
    fails
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_powers() {
        let s = AlgebraSpec::new(AlgebraType::D2, 1).unwrap();
        assert_eq!(s.p_pow(2), Poly::monomial(exps_q(-2), GInt::real(-1)));
        assert_eq!(s.p_pow(1), Poly::monomial(exps_q(-1), GInt::i()));
        assert_eq!(s.with_sign(-1).p_pow(1), Poly::monomial(exps_q(-1), GInt::i().conj()));
        assert_eq!(s.p_pow(-1).mul(&s.p_pow(1)), Poly::one());
    }

    #[test]
    fn shifts_stay_in_range() {
        assert_eq!(shift(0b10, 2, &[(1, -1), (2, 1)]), Some(0b01));
        assert_eq!(shift(0b01, 2, &[(1, -1), (2, 1)]), None);
    }
}
