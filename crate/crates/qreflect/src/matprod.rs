//! Spectral-parameter dependent `S` and `K` matrices on `V^{⊗n}`.
//!
//! Every entry is a trace or boundary matrix element of a length-`n` word in
//! the q-boson generators, multiplied by a normalizing scalar that cancels the
//! infinite products. The spectral parameter is the variable `z`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qboson::{boundary_eval, trace_eval, BosonError, OperatorWord};
use crate::scalar::{parse_scalar, ExactScalar, GaussianRational, MonomialArg, ScalarError, Var};
use crate::threedim::{local_k, local_l};

#[derive(Debug, Error)]
pub enum MatprodError {
    #[error(transparent)]
    Boson(#[from] BosonError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("entry {row} <- {col} keeps a Pochhammer factor after normalization")]
    Irrational { row: String, col: String },
    #[error("entry {row} <- {col} crosses blocks")]
    CrossBlockEntry { row: String, col: String },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("malformed matrix file: {0}")]
    Format(String),
}

/// A word `α ∈ {0,1}^n` stored as its big-endian integer `Σ α_i 2^{n-i}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BitString {
    n: u8,
    index: u32,
}

impl BitString {
    pub fn new(n: usize, index: u32) -> Self {
        assert!(n <= 24 && (index as u64) < (1u64 << n), "bit string out of range");
        BitString { n: n as u8, index }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let index = bits.iter().fold(0u32, |acc, &b| (acc << 1) | (b as u32 & 1));
        BitString::new(bits.len(), index)
    }

    pub fn zero(n: usize) -> Self {
        BitString::new(n, 0)
    }

    /// `e_j`, with `j` counted from 1.
    pub fn unit(n: usize, j: usize) -> Self {
        assert!(1 <= j && j <= n);
        BitString::new(n, 1 << (n - j))
    }

    /// `e_1 + ··· + e_l`.
    pub fn leading_ones(n: usize, l: usize) -> Self {
        BitString::new(n, (((1u64 << l) - 1) << (n - l)) as u32)
    }

    /// `e_{l+1} + ··· + e_n`.
    pub fn trailing_ones(n: usize, l: usize) -> Self {
        BitString::new(n, ((1u64 << (n - l)) - 1) as u32)
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// `α_j` for `1 ≤ j ≤ n`.
    pub fn bit(&self, j: usize) -> u8 {
        ((self.index >> (self.len() - j)) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (1..=self.len()).map(|j| self.bit(j)).collect()
    }

    pub fn weight(&self) -> usize {
        self.index.count_ones() as usize
    }

    pub fn is_even(&self) -> bool {
        self.weight().is_multiple_of(2)
    }

    /// `α^∨ = (α_n, ..., α_1)`.
    pub fn reversed(&self) -> Self {
        let mut b = self.bits();
        b.reverse();
        BitString::from_bits(&b)
    }

    /// `e_1 + ··· + e_n − α`.
    pub fn complement(&self) -> Self {
        BitString::new(self.len(), !self.index & (((1u64 << self.n) - 1) as u32))
    }

    pub fn all(n: usize) -> impl Iterator<Item = BitString> {
        (0..(1u32 << n)).map(move |i| BitString::new(n, i))
    }

    pub fn of_weight(n: usize, l: usize) -> impl Iterator<Item = BitString> {
        BitString::all(n).filter(move |b| b.weight() == l)
    }

    pub fn parse(s: &str) -> Result<Self, MatprodError> {
        let bits: Option<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect();
        match bits {
            Some(b) if !b.is_empty() && b.len() <= 24 => Ok(BitString::from_bits(&b)),
            _ => Err(MatprodError::BadParameter(format!("bad bit string {:?}", s))),
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(b: &BitString) -> Parity {
        if b.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sign(self) -> char {
        match self {
            Parity::Even => '+',
            Parity::Odd => '-',
        }
    }

    fn flip_if(self, odd: bool) -> Parity {
        match (self, odd) {
            (p, false) => p,
            (Parity::Even, true) => Parity::Odd,
            (Parity::Odd, true) => Parity::Even,
        }
    }
}

/// Which construction produced a matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    STrace,
    SBoundary { s: u8, sp: u8 },
    KTrace,
    KBoundary { k: u8, kp: u8 },
}

impl Family {
    /// `true` for `S` matrices on `V ⊗ V`, `false` for `K` matrices on `V`.
    pub fn is_pair(&self) -> bool {
        matches!(self, Family::STrace | Family::SBoundary { .. })
    }

    pub fn parse(s: &str) -> Result<Family, MatprodError> {
        let bad = || MatprodError::BadParameter(format!("unknown family {:?}", s));
        match s {
            "S^tr" => return Ok(Family::STrace),
            "K^tr" => return Ok(Family::KTrace),
            _ => {}
        }
        let (head, inner) = if let Some(r) = s.strip_prefix("S^{") {
            ('S', r)
        } else if let Some(r) = s.strip_prefix("K^{") {
            ('K', r)
        } else {
            return Err(bad());
        };
        let (a, b) = inner.strip_suffix('}').and_then(|r| r.split_once(',')).ok_or_else(bad)?;
        let a: u8 = a.trim().parse().map_err(|_| bad())?;
        let b: u8 = b.trim().parse().map_err(|_| bad())?;
        if !(1..=2).contains(&a) || !(1..=2).contains(&b) {
            return Err(bad());
        }
        Ok(if head == 'S' { Family::SBoundary { s: a, sp: b } } else { Family::KBoundary { k: a, kp: b } })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::STrace => write!(f, "S^tr"),
            Family::SBoundary { s, sp } => write!(f, "S^{{{},{}}}", s, sp),
            Family::KTrace => write!(f, "K^tr"),
            Family::KBoundary { k, kp } => write!(f, "K^{{{},{}}}", k, kp),
        }
    }
}

/// The graded piece a matrix is restricted to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Block {
    Full,
    /// `V_l ⊗ V_m` for `S^tr`.
    Weights(usize, usize),
    /// `V^σ ⊗ V^σ'` for `S^{2,2}`.
    Parities(Parity, Parity),
    /// Source `V_l` for `K^tr`.
    Weight(usize),
    /// Source `V^σ` for `K^{2,2}`.
    Parity(Parity),
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Full => write!(f, "full"),
            Block::Weights(l, m) => write!(f, "l={},m={}", l, m),
            Block::Parities(a, b) => write!(f, "{}{}", a.sign(), b.sign()),
            Block::Weight(l) => write!(f, "l={}", l),
            Block::Parity(a) => write!(f, "{}", a.sign()),
        }
    }
}

impl Block {
    pub fn parse(s: &str) -> Result<Block, MatprodError> {
        let bad = || MatprodError::BadParameter(format!("unknown block {:?}", s));
        let par = |c: char| match c {
            '+' => Ok(Parity::Even),
            '-' => Ok(Parity::Odd),
            _ => Err(bad()),
        };
        if s == "full" {
            return Ok(Block::Full);
        }
        if let Some(rest) = s.strip_prefix("l=") {
            return match rest.split_once(",m=") {
                Some((l, m)) => Ok(Block::Weights(l.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?)),
                None => Ok(Block::Weight(rest.parse().map_err(|_| bad())?)),
            };
        }
        let cs: Vec<char> = s.chars().collect();
        match cs.as_slice() {
            [a] => Ok(Block::Parity(par(*a)?)),
            [a, b] => Ok(Block::Parities(par(*a)?, par(*b)?)),
            _ => Err(bad()),
        }
    }
}

/// Basis label of `V^{⊗n}` or `V^{⊗n} ⊗ V^{⊗n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Basis {
    Single(BitString),
    Pair(BitString, BitString),
}

impl Basis {
    pub fn single(&self) -> BitString {
        match self {
            Basis::Single(a) => *a,
            Basis::Pair(..) => panic!("expected a V basis vector"),
        }
    }

    pub fn pair(&self) -> (BitString, BitString) {
        match self {
            Basis::Pair(a, b) => (*a, *b),
            Basis::Single(_) => panic!("expected a V ⊗ V basis vector"),
        }
    }

    pub fn parse(s: &str) -> Result<Basis, MatprodError> {
        match s.split_once(',') {
            Some((a, b)) => Ok(Basis::Pair(BitString::parse(a)?, BitString::parse(b)?)),
            None => Ok(Basis::Single(BitString::parse(s)?)),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Single(a) => write!(f, "{}", a),
            Basis::Pair(a, b) => write!(f, "{},{}", a, b),
        }
    }
}

/// Sparse matrix with `entries[(row, col)]` the coefficient of `|row⟩` in the image of `|col⟩`.
#[derive(Clone, PartialEq, Debug)]
pub struct QMatrix {
    pub n: usize,
    pub family: Family,
    pub block: Block,
    pub entries: BTreeMap<(Basis, Basis), ExactScalar>,
}

impl QMatrix {
    pub fn empty(n: usize, family: Family, block: Block) -> Self {
        QMatrix { n, family, block, entries: BTreeMap::new() }
    }

    pub fn get(&self, row: &Basis, col: &Basis) -> ExactScalar {
        self.entries.get(&(*row, *col)).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn insert(&mut self, row: Basis, col: Basis, v: ExactScalar) {
        if v.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All basis vectors of the underlying space, in big-endian order.
    pub fn basis(&self) -> Vec<Basis> {
        let n = self.n;
        if self.family.is_pair() {
            BitString::all(n).flat_map(|a| BitString::all(n).map(move |b| Basis::Pair(a, b))).collect()
        } else {
            BitString::all(n).map(Basis::Single).collect()
        }
    }

    /// Image of a basis vector as `(row, coefficient)` pairs.
    pub fn column(&self, col: &Basis) -> Vec<(Basis, ExactScalar)> {
        self.entries.iter().filter(|((_, c), _)| c == col).map(|((r, _), v)| (*r, v.clone())).collect()
    }

    pub fn columns(&self) -> BTreeMap<Basis, Vec<(Basis, ExactScalar)>> {
        let mut out: BTreeMap<Basis, Vec<(Basis, ExactScalar)>> = BTreeMap::new();
        for ((r, c), v) in &self.entries {
            out.entry(*c).or_default().push((*r, v.clone()));
        }
        out
    }

    pub fn is_rational(&self) -> bool {
        self.entries.values().all(|v| v.is_rational())
    }

    /// Entrywise substitution of `z`, e.g. `z ↦ x/y`.
    pub fn substitute(&self, bindings: &[(Var, MonomialArg)]) -> Result<QMatrix, ScalarError> {
        let entries: Result<BTreeMap<_, _>, ScalarError> =
            self.entries.par_iter().map(|(k, v)| Ok((*k, v.substitute(bindings)?))).collect();
        Ok(QMatrix { entries: entries?, ..self.clone() })
    }

    pub fn dense(&self) -> Vec<Vec<ExactScalar>> {
        let basis = self.basis();
        basis.iter().map(|r| basis.iter().map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<JsonEntry> =
            self.entries.iter().map(|((r, c), v)| JsonEntry { row: r.to_string(), col: c.to_string(), value: v.to_string() }).collect();
        serde_json::to_value(JsonMatrix {
            family: self.family.to_string(),
            n: self.n,
            block: self.block.to_string(),
            basis_order: BASIS_ORDER.to_string(),
            entries,
        })
        .expect("matrix serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<QMatrix, MatprodError> {
        let m: JsonMatrix = serde_json::from_value(v.clone()).map_err(|e| MatprodError::Format(e.to_string()))?;
        if m.basis_order != BASIS_ORDER {
            return Err(MatprodError::Format(format!("unsupported basis order {:?}", m.basis_order)));
        }
        let family = Family::parse(&m.family)?;
        let mut out = QMatrix::empty(m.n, family, Block::parse(&m.block)?);
        for e in m.entries {
            let row = Basis::parse(&e.row)?;
            let col = Basis::parse(&e.col)?;
            for b in [row, col] {
                let ok = match b {
                    Basis::Single(a) => !family.is_pair() && a.len() == m.n,
                    Basis::Pair(a, c) => family.is_pair() && a.len() == m.n && c.len() == m.n,
                };
                if !ok {
                    return Err(MatprodError::Format(format!("basis label {} does not fit n = {}", b, m.n)));
                }
            }
            let v = parse_scalar(&e.value)?;
            out.insert(row, col, v);
        }
        Ok(out)
    }

    /// One line per basis vector with a nonzero image, `|α⟩ ↦ c|β⟩ + ···`.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        for (col, image) in self.columns() {
            s.push_str(&format!("|{}⟩ ↦ ", col));
            for (i, (row, v)) in image.iter().enumerate() {
                let text = v.to_string();
                let neg = text.starts_with('-') && !text[1..].contains(['+', '-', '/']);
                let body = if neg { text[1..].to_string() } else { text.clone() };
                let sep = match (i, neg) {
                    (0, false) => "",
                    (0, true) => "-",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                let coeff = if body == "1" {
                    String::new()
                } else if body.contains(['+', '-', '/', ' ']) {
                    format!("({})", body)
                } else {
                    body
                };
                s.push_str(&format!("{}{}|{}⟩", sep, coeff, row));
            }
            s.push('\n');
        }
        s
    }
}

const BASIS_ORDER: &str = "big-endian bits";

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    row: String,
    col: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct JsonMatrix {
    family: String,
    n: usize,
    block: String,
    basis_order: String,
    entries: Vec<JsonEntry>,
}

/// Scalar prefactors making the entries rational.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Normalizer {
    RhoTrace { l: usize, m: usize },
    RhoBoundary { s: u8, sp: u8 },
    Rho22 { sigma: Parity, sigmap: Parity },
    KappaTrace { n: usize, l: usize },
    KappaBoundary { n: usize, k: u8, kp: u8 },
}

impl Normalizer {
    pub fn value(&self) -> ExactScalar {
        let z = MonomialArg::var(Var::Z);
        let inf = |arg: MonomialArg, step: u32, e: i32| ExactScalar::poch_inf(arg, step, e).expect("nonzero argument");
        let minus = |m: MonomialArg| m.scaled(&GaussianRational::from_int(-1));
        match *self {
            Normalizer::RhoTrace { l, m } => {
                let d = l.abs_diff(m) as i32;
                let one_minus = ExactScalar::from_rat(z.mul(&MonomialArg::q(2 * d)).one_minus());
                ExactScalar::q(-d).mul(&one_minus)
            }
            Normalizer::RhoBoundary { s, sp } => {
                let u = s.max(sp) as i32;
                let step = 2 * s as u32 * sp as u32;
                let zu = z.pow(u);
                inf(zu.clone(), step, 1).mul(&inf(minus(zu.mul(&MonomialArg::q(2))), step, -1))
            }
            Normalizer::Rho22 { sigma, sigmap } => {
                let z2 = z.pow(2);
                if sigma == sigmap {
                    inf(z2.clone(), 8, 1).mul(&inf(z2.mul(&MonomialArg::q(4)), 8, -1))
                } else {
                    inf(z2.mul(&MonomialArg::q(4)), 8, 1).mul(&inf(z2.mul(&MonomialArg::q(8)), 8, -1)).mul(&ExactScalar::q(-1))
                }
            }
            Normalizer::KappaTrace { n, l } => {
                let sign = if l % 2 == 0 { ExactScalar::one() } else { ExactScalar::from_int(-1) };
                let one_minus = ExactScalar::from_rat(z.mul(&MonomialArg::q(n as i32)).one_minus());
                sign.mul(&ExactScalar::q_half(-(n as i32))).mul(&one_minus)
            }
            Normalizer::KappaBoundary { n, k, kp } => {
                let r = k.min(kp) as i32;
                let u = k.max(kp) as i32;
                let step = k as u32 * kp as u32;
                let a = z.mul(&MonomialArg::q(n as i32)).pow(u);
                let mut b = a.mul(&MonomialArg::q(r));
                if r % 2 == 1 {
                    b = minus(b);
                }
                ExactScalar::q_half(-(n as i32)).mul(&inf(a, step, 1)).mul(&inf(b, step, -1))
            }
        }
    }
}

fn zvar() -> MonomialArg {
    MonomialArg::var(Var::Z)
}

fn check_boundary_index(x: u8) -> Result<(), MatprodError> {
    if x == 1 || x == 2 {
        Ok(())
    } else {
        Err(MatprodError::BadParameter(format!("boundary index {} is not 1 or 2", x)))
    }
}

/// `L^{γ_1δ_1}_{α_1β_1} ··· L^{γ_nδ_n}_{α_nβ_n}`.
pub fn l_word(alpha: &BitString, beta: &BitString, gamma: &BitString, delta: &BitString) -> Result<OperatorWord, BosonError> {
    let mut w = local_l(alpha.bit(1), beta.bit(1), gamma.bit(1), delta.bit(1));
    for j in 2..=alpha.len() {
        if w.is_zero() {
            break;
        }
        w = w.concat(&local_l(alpha.bit(j), beta.bit(j), gamma.bit(j), delta.bit(j)))?;
    }
    Ok(w)
}

/// `K^{β_1}_{α_1} ··· K^{β_n}_{α_n}`.
pub fn k_word(alpha: &BitString, beta: &BitString) -> Result<OperatorWord, BosonError> {
    let mut w = local_k(alpha.bit(1), beta.bit(1));
    for j in 2..=alpha.len() {
        w = w.concat(&local_k(alpha.bit(j), beta.bit(j)))?;
    }
    Ok(w)
}

/// Outputs `(γ, δ)` with `α_i + β_i = γ_i + δ_i` at every site.
pub fn pair_outputs(alpha: &BitString, beta: &BitString) -> Vec<(BitString, BitString)> {
    let n = alpha.len();
    let mixed = alpha.index() ^ beta.index();
    let common = alpha.index() & beta.index();
    let mut out = Vec::new();
    let mut sub = mixed;
    loop {
        out.push((BitString::new(n, common | sub), BitString::new(n, common | (mixed & !sub))));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mixed;
    }
    out.sort();
    out
}

fn rational_entry(v: ExactScalar, row: &Basis, col: &Basis) -> Result<ExactScalar, MatprodError> {
    if v.is_rational() {
        Ok(v)
    } else {
        Err(MatprodError::Irrational { row: row.to_string(), col: col.to_string() })
    }
}

fn assemble(
    n: usize,
    family: Family,
    block: Block,
    cols: Vec<Basis>,
    f: impl Fn(&Basis) -> Result<Vec<(Basis, ExactScalar)>, MatprodError> + Sync,
) -> Result<QMatrix, MatprodError> {
    let parts: Result<Vec<_>, MatprodError> = cols.par_iter().map(|c| Ok((*c, f(c)?))).collect();
    let mut m = QMatrix::empty(n, family, block);
    for (c, image) in parts? {
        for (r, v) in image {
            m.insert(r, c, v);
        }
    }
    Ok(m)
}

fn check_n(n: usize) -> Result<(), MatprodError> {
    if (1..=12).contains(&n) {
        Ok(())
    } else {
        Err(MatprodError::BadParameter(format!("n = {} outside 1..=12", n)))
    }
}

fn s_trace_column(col: &Basis) -> Result<Vec<(Basis, ExactScalar)>, MatprodError> {
    let (alpha, beta) = col.pair();
    let rho = Normalizer::RhoTrace { l: alpha.weight(), m: beta.weight() }.value();
    let mut out = Vec::new();
    for (gamma, delta) in pair_outputs(&alpha, &beta) {
        let w = l_word(&alpha, &beta, &gamma, &delta)?;
        let v = trace_eval(&w, &zvar())?;
        if !v.is_zero() {
            let row = Basis::Pair(gamma, delta);
            out.push((row, rational_entry(rho.mul(&v), &row, col)?));
        }
    }
    Ok(out)
}

/// `S^tr_{l,m}(z)` on `V_l ⊗ V_m`.
pub fn build_s_trace(n: usize, l: usize, m: usize) -> Result<QMatrix, MatprodError> {
    check_n(n)?;
    if l > n || m > n {
        return Err(MatprodError::BadParameter(format!("weights ({}, {}) exceed n = {}", l, m, n)));
    }
    let cols: Vec<Basis> = BitString::of_weight(n, l).flat_map(|a| BitString::of_weight(n, m).map(move |b| Basis::Pair(a, b))).collect();
    assemble(n, Family::STrace, Block::Weights(l, m), cols, s_trace_column)
}

/// `S^tr(z) = ⊕_{l,m} S^tr_{l,m}(z)` on all of `V ⊗ V`.
pub fn build_s_trace_full(n: usize) -> Result<QMatrix, MatprodError> {
    check_n(n)?;
    let cols: Vec<Basis> = BitString::all(n).flat_map(|a| BitString::all(n).map(move |b| Basis::Pair(a, b))).collect();
    assemble(n, Family::STrace, Block::Full, cols, s_trace_column)
}

/// `S^{s,s'}(z)` on `V ⊗ V`.
pub fn build_s_boundary(n: usize, s: u8, sp: u8) -> Result<QMatrix, MatprodError> {
    check_n(n)?;
    check_boundary_index(s)?;
    check_boundary_index(sp)?;
    let cols: Vec<Basis> = BitString::all(n).flat_map(|a| BitString::all(n).map(move |b| Basis::Pair(a, b))).collect();
    let plain = if (s, sp) == (2, 2) { None } else { Some(Normalizer::RhoBoundary { s, sp }.value()) };
    assemble(n, Family::SBoundary { s, sp }, Block::Full, cols, |col| {
        let (alpha, beta) = col.pair();
        let rho = match &plain {
            Some(r) => r.clone(),
            None => Normalizer::Rho22 { sigma: Parity::of(&alpha), sigmap: Parity::of(&beta) }.value(),
        };
        let mut out = Vec::new();
        for (gamma, delta) in pair_outputs(&alpha, &beta) {
            let w = l_word(&alpha, &beta, &gamma, &delta)?;
            if w.is_zero() {
                continue;
            }
            let v = boundary_eval(&w, s, sp, &zvar())?;
            if !v.is_zero() {
                let row = Basis::Pair(gamma, delta);
                out.push((row, rational_entry(rho.mul(&v), &row, col)?));
            }
        }
        Ok(out)
    })
}

/// `K^tr(z)` on `V`.
pub fn build_k_trace(n: usize) -> Result<QMatrix, MatprodError> {
    check_n(n)?;
    let cols: Vec<Basis> = BitString::all(n).map(Basis::Single).collect();
    assemble(n, Family::KTrace, Block::Full, cols, |col| {
        let alpha = col.single();
        let kappa = Normalizer::KappaTrace { n, l: alpha.weight() }.value();
        let mut out = Vec::new();
        for beta in BitString::all(n) {
            let v = trace_eval(&k_word(&alpha, &beta)?, &zvar())?;
            if !v.is_zero() {
                let row = Basis::Single(beta);
                out.push((row, rational_entry(kappa.mul(&v), &row, col)?));
            }
        }
        Ok(out)
    })
}

/// `K^{k,k'}(z)` on `V`.
pub fn build_k_boundary(n: usize, k: u8, kp: u8) -> Result<QMatrix, MatprodError> {
    check_n(n)?;
    check_boundary_index(k)?;
    check_boundary_index(kp)?;
    let kappa = Normalizer::KappaBoundary { n, k, kp }.value();
    let cols: Vec<Basis> = BitString::all(n).map(Basis::Single).collect();
    assemble(n, Family::KBoundary { k, kp }, Block::Full, cols, |col| {
        let alpha = col.single();
        let mut out = Vec::new();
        for beta in BitString::all(n) {
            let v = boundary_eval(&k_word(&alpha, &beta)?, k, kp, &zvar())?;
            if !v.is_zero() {
                let row = Basis::Single(beta);
                out.push((row, rational_entry(kappa.mul(&v), &row, col)?));
            }
        }
        Ok(out)
    })
}

/// Builds any family; `block` selects `S^tr_{l,m}` and is ignored otherwise.
pub fn build(n: usize, family: Family) -> Result<QMatrix, MatprodError> {
    match family {
        Family::STrace => build_s_trace_full(n),
        Family::SBoundary { s, sp } => build_s_boundary(n, s, sp),
        Family::KTrace => build_k_trace(n),
        Family::KBoundary { k, kp } => build_k_boundary(n, k, kp),
    }
}

/// Source and target grade of an entry, or `None` for ungraded families.
fn grades(m: &QMatrix, row: &Basis, col: &Basis) -> Option<(Block, Block)> {
    let n = m.n;
    match m.family {
        Family::STrace => {
            let (a, b) = col.pair();
            let (g, d) = row.pair();
            Some((Block::Weights(a.weight(), b.weight()), Block::Weights(g.weight(), d.weight())))
        }
        Family::SBoundary { s: 2, sp: 2 } => {
            let (a, b) = col.pair();
            let (g, d) = row.pair();
            Some((Block::Parities(Parity::of(&a), Parity::of(&b)), Block::Parities(Parity::of(&g), Parity::of(&d))))
        }
        Family::KTrace => {
            let a = col.single();
            let b = row.single();
            Some((Block::Weight(a.weight()), Block::Weight(n - b.weight())))
        }
        Family::KBoundary { k: 2, kp: 2 } => {
            let a = col.single();
            let b = row.single();
            Some((Block::Parity(Parity::of(&a)), Block::Parity(Parity::of(&b).flip_if(n % 2 == 1))))
        }
        _ => None,
    }
}

/// All block labels of a family, in canonical order.
pub fn block_labels(n: usize, family: Family) -> Vec<Block> {
    let pm = [Parity::Even, Parity::Odd];
    match family {
        Family::STrace => (0..=n).flat_map(|l| (0..=n).map(move |m| Block::Weights(l, m))).collect(),
        Family::SBoundary { s: 2, sp: 2 } => pm.iter().flat_map(|a| pm.iter().map(move |b| Block::Parities(*a, *b))).collect(),
        Family::KTrace => (0..=n).map(Block::Weight).collect(),
        Family::KBoundary { k: 2, kp: 2 } => pm.iter().map(|a| Block::Parity(*a)).collect(),
        _ => vec![Block::Full],
    }
}

/// Splits a matrix into its graded blocks; an entry joining two different grades is an error.
pub fn block_decompose(m: &QMatrix) -> Result<Vec<QMatrix>, MatprodError> {
    let labels = block_labels(m.n, m.family);
    let mut blocks: Vec<QMatrix> = labels.iter().map(|b| QMatrix::empty(m.n, m.family, *b)).collect();
    for ((r, c), v) in &m.entries {
        let target = match grades(m, r, c) {
            None => Block::Full,
            Some((src, dst)) => {
                if src != dst {
                    return Err(MatprodError::CrossBlockEntry { row: r.to_string(), col: c.to_string() });
                }
                src
            }
        };
        let i = labels.iter().position(|b| *b == target).expect("label listed");
        blocks[i].entries.insert((*r, *c), v.clone());
    }
    Ok(blocks)
}

/// Outcome of a reversal-symmetry comparison.
#[derive(Clone, Debug, Default)]
pub struct SymmetryReport {
    pub applicable: bool,
    pub checked: usize,
    pub mismatches: Vec<(Basis, Basis)>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `m` with its partner under index reversal:
/// `S^{γδ}_{αβ} = z^{|β|-|δ|} S'^{α∨β∨}_{γ∨δ∨}` with `S'` the family with
/// swapped labels, and `K^β_α = z^{n-|α|-|β|} K'^{1-α∨}_{1-β∨}`.
/// `K^tr` has no such relation and reports `applicable = false`.
pub fn symmetry_check(m: &QMatrix) -> Result<SymmetryReport, MatprodError> {
    let n = m.n;
    let owned;
    let partner: &QMatrix = match m.family {
        Family::STrace => m,
        Family::SBoundary { s, sp } if s == sp => m,
        Family::SBoundary { s, sp } => {
            owned = build_s_boundary(n, sp, s)?;
            &owned
        }
        Family::KBoundary { k, kp } if k == kp => m,
        Family::KBoundary { k, kp } => {
            owned = build_k_boundary(n, kp, k)?;
            &owned
        }
        Family::KTrace => return Ok(SymmetryReport::default()),
    };
    // image of an entry position under the reversal map, with the z-power
    let image = |r: &Basis, c: &Basis| -> ((Basis, Basis), i32) {
        match (r, c) {
            (Basis::Pair(g, d), Basis::Pair(a, b)) => {
                ((Basis::Pair(a.reversed(), b.reversed()), Basis::Pair(g.reversed(), d.reversed())), b.weight() as i32 - d.weight() as i32)
            }
            (Basis::Single(b), Basis::Single(a)) => (
                (Basis::Single(a.reversed().complement()), Basis::Single(b.reversed().complement())),
                n as i32 - a.weight() as i32 - b.weight() as i32,
            ),
            _ => unreachable!("mixed basis labels"),
        }
    };
    let mut positions: Vec<(Basis, Basis)> = m.entries.keys().cloned().collect();
    // the map is an involution on positions, so partner entries pull back by the same map
    positions.extend(partner.entries.keys().map(|(r, c)| image(r, c).0));
    positions.sort();
    positions.dedup();
    let mut report = SymmetryReport { applicable: true, ..Default::default() };
    // the block label restricts which positions the partner can hold
    for (r, c) in positions {
        let ((pr, pc), e) = image(&r, &c);
        let lhs = m.get(&r, &c);
        let rhs = partner.get(&pr, &pc).mul_monomial(&zvar().pow(e));
        report.checked += 1;
        if lhs != rhs {
            report.mismatches.push((r, c));
        }
    }
    Ok(report)
}

/// Which of the two minimal-weight shapes to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MinSide {
    /// `S^tr_{m,1}` on `V_m ⊗ V_1`.
    M1,
    /// `S^tr_{1,m}` on `V_1 ⊗ V_m`.
    OneM,
}

/// `S^tr_{m,1}(z)` or `S^tr_{1,m}(z)` from the explicit element list, without any trace.
pub fn closed_form_s_tr_min1(n: usize, m: usize, side: MinSide) -> Result<QMatrix, MatprodError> {
    check_n(n)?;
    if m == 0 || m > n {
        return Err(MatprodError::BadParameter(format!("need 1 <= m <= n, got m = {}", m)));
    }
    let z = ExactScalar::var(Var::Z);
    let mi = m as i32;
    let den = ExactScalar::one().try_sub(&z.mul(&ExactScalar::q(2 * mi + 2)))?;
    let one_minus_q4 = ExactScalar::one().try_sub(&ExactScalar::q(4))?;
    let sign = |e: usize| if e.is_multiple_of(2) { ExactScalar::one() } else { ExactScalar::from_int(-1) };
    let ratio = ExactScalar::q(2).mul(&ExactScalar::one().try_sub(&z.mul(&ExactScalar::q(2 * mi - 2)))?).try_div(&den)?;
    let span = |v: &BitString, lo: usize, hi: usize| (lo..=hi).map(|i| v.bit(i) as i32).sum::<i32>();
    let block = match side {
        MinSide::M1 => Block::Weights(m, 1),
        MinSide::OneM => Block::Weights(1, m),
    };
    let mut out = QMatrix::empty(n, Family::STrace, block);
    for big in BitString::of_weight(n, m) {
        for j in 1..=n {
            let ej = BitString::unit(n, j);
            let col = match side {
                MinSide::M1 => Basis::Pair(big, ej),
                MinSide::OneM => Basis::Pair(ej, big),
            };
            let diag = match (side, big.bit(j)) {
                (MinSide::M1, 1) => sign(m + 1),
                (MinSide::M1, _) => sign(m).mul(&ratio),
                (MinSide::OneM, 1) => ExactScalar::one(),
                (MinSide::OneM, _) => ratio.neg(),
            };
            out.insert(col, col, diag);
            if big.bit(j) == 1 {
                continue;
            }
            for k in (1..=n).filter(|&k| k != j && big.bit(k) == 1) {
                let moved = BitString::new(n, big.index() ^ ej.index() ^ BitString::unit(n, k).index());
                let ek = BitString::unit(n, k);
                let v = match side {
                    MinSide::M1 => {
                        let base = sign(m + 1).mul(&one_minus_q4).try_div(&den)?;
                        if j < k {
                            base.mul(&z).mul(&ExactScalar::q(2 * (mi - span(&big, j + 1, k))))
                        } else {
                            base.mul(&ExactScalar::q(2 * span(&big, k + 1, j)))
                        }
                    }
                    MinSide::OneM => {
                        let base = one_minus_q4.try_div(&den)?;
                        if j < k {
                            base.mul(&ExactScalar::q(2 * span(&moved, j + 1, k)))
                        } else {
                            base.mul(&z).mul(&ExactScalar::q(2 * (mi - span(&moved, k + 1, j))))
                        }
                    }
                };
                let row = match side {
                    MinSide::M1 => Basis::Pair(moved, ek),
                    MinSide::OneM => Basis::Pair(ek, moved),
                };
                out.insert(row, col, v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> ExactScalar {
        parse_scalar(s).unwrap()
    }

    fn pb(a: &str, b: &str) -> Basis {
        Basis::Pair(BitString::parse(a).unwrap(), BitString::parse(b).unwrap())
    }

    #[test]
    fn bit_strings() {
        let a = BitString::parse("0110").unwrap();
        assert_eq!(a.index(), 6);
        assert_eq!(a.weight(), 2);
        assert_eq!(a.reversed().to_string(), "0110");
        assert_eq!(BitString::parse("0010").unwrap().reversed().to_string(), "0100");
        assert_eq!(a.complement().to_string(), "1001");
        assert_eq!(BitString::unit(3, 1).to_string(), "100");
        assert_eq!(BitString::leading_ones(4, 2).to_string(), "1100");
        assert_eq!(BitString::trailing_ones(4, 1).to_string(), "0111");
    }

    #[test]
    fn pair_outputs_follow_site_rule() {
        let a = BitString::parse("0110").unwrap();
        let b = BitString::parse("1100").unwrap();
        let outs = pair_outputs(&a, &b);
        assert_eq!(outs.len(), 4);
        for (g, d) in outs {
            for j in 1..=4 {
                assert_eq!(a.bit(j) + b.bit(j), g.bit(j) + d.bit(j));
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        for f in [Family::STrace, Family::KTrace, Family::SBoundary { s: 1, sp: 2 }, Family::KBoundary { k: 2, kp: 1 }] {
            assert_eq!(Family::parse(&f.to_string()).unwrap(), f);
        }
        for b in
            [Block::Full, Block::Weights(1, 2), Block::Weight(3), Block::Parity(Parity::Odd), Block::Parities(Parity::Even, Parity::Odd)]
        {
            assert_eq!(Block::parse(&b.to_string()).unwrap(), b);
        }
        assert!(Family::parse("S^{3,1}").is_err());
    }

    #[test]
    fn six_vertex() {
        let s = build_s_trace(2, 1, 1).unwrap();
        let c = pb("01", "10");
        assert_eq!(s.get(&c, &c), sc("-q^2*(-1+z)/(-1+q^4*z)"));
        assert_eq!(s.get(&pb("10", "01"), &c), sc("(-1+q^4)*z/(-1+q^4*z)"));
        assert!(s.get(&pb("01", "01"), &pb("01", "01")).is_one());
    }

    #[test]
    fn k_boundary_n1() {
        let k = build_k_boundary(1, 2, 2).unwrap();
        let b = |s: &str| Basis::Single(BitString::parse(s).unwrap());
        assert!(k.get(&b("1"), &b("0")).is_one());
        assert_eq!(k.get(&b("0"), &b("1")), ExactScalar::from_int(-1));
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let m = build_k_trace(2).unwrap();
        let back = QMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(m, back);
    }
}
