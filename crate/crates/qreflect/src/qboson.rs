//! q-boson algebras on Fock spaces, normal ordering, traces and
//! boundary-vector matrix elements.
//!
//! Both algebras share one implementation parameterized by the base `b`:
//! `b = q` for `a±, k` on `F_q` and `b = q²` for `A±, K` on `F_{q²}`.
//! In terms of `b`,
//!
//! ```text
//! a+|m> = |m+1>,   a-|m> = (1 - b^{2m})|m-1>,   k|m> = b^{m+1/2}|m>,   u^h|m> = u^m|m>
//! ```
//!
//! and a normal-ordered term is `c (a+)^r (a-)^s u^h`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{qbinomial, qpoch_finite, ExactScalar, GaussianRational, MonomialArg, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BosonError {
    #[error("operator and state belong to different algebras")]
    AlgebraMismatch,
    #[error("boundary elimination exceeded its rewrite bound")]
    NonTermination,
    #[error("boundary index must be 1 or 2, got {0}")]
    BadBoundaryIndex(u8),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Algebra {
    /// `a±, k` on `F_q`.
    Single,
    /// `A±, K` on `F_{q²}`.
    Doubled,
}

impl Algebra {
    /// `b = q^beta`.
    pub fn beta(self) -> i32 {
        match self {
            Algebra::Single => 1,
            Algebra::Doubled => 2,
        }
    }

    /// `b^k`, with half-integer `k` given as `half/2`.
    fn b_half(self, half: i32) -> MonomialArg {
        MonomialArg::q_half(self.beta() * half)
    }

    fn b(self, k: i32) -> MonomialArg {
        self.b_half(2 * k)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    Raise,
    Lower,
    /// `k = b^{h + 1/2}`.
    KDiag,
    /// `u^h`.
    HPower(MonomialArg),
}

impl Generator {
    /// The anti-involution fixing `k` and `u^h` and exchanging `a+` with `a-`.
    pub fn bar(&self) -> Generator {
        match self {
            Generator::Raise => Generator::Lower,
            Generator::Lower => Generator::Raise,
            g => g.clone(),
        }
    }
}

/// `scale · letters[0] · letters[1] ···`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorWord {
    pub algebra: Algebra,
    pub letters: Vec<Generator>,
    pub scale: ExactScalar,
}

impl OperatorWord {
    pub fn identity(algebra: Algebra) -> Self {
        OperatorWord { algebra, letters: Vec::new(), scale: ExactScalar::one() }
    }

    pub fn zero(algebra: Algebra) -> Self {
        OperatorWord { algebra, letters: Vec::new(), scale: ExactScalar::zero() }
    }

    pub fn new(algebra: Algebra, letters: Vec<Generator>) -> Self {
        OperatorWord { algebra, letters, scale: ExactScalar::one() }
    }

    pub fn letter(algebra: Algebra, g: Generator) -> Self {
        OperatorWord::new(algebra, vec![g])
    }

    pub fn scaled(mut self, c: &ExactScalar) -> Self {
        self.scale = self.scale.mul(c);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &OperatorWord) -> Result<OperatorWord, BosonError> {
        if self.algebra != other.algebra {
            return Err(BosonError::AlgebraMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(OperatorWord { algebra: self.algebra, letters, scale: self.scale.mul(&other.scale) })
    }

    /// Reversed word with every letter barred.
    pub fn reverse_bar(&self) -> OperatorWord {
        OperatorWord { algebra: self.algebra, letters: self.letters.iter().rev().map(Generator::bar).collect(), scale: self.scale.clone() }
    }

    /// The word with the algebra relabeled; the letters keep their meaning relative to the new base.
    pub fn in_algebra(&self, algebra: Algebra) -> OperatorWord {
        OperatorWord { algebra, ..self.clone() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalTerm {
    pub coeff: ExactScalar,
    pub r: u32,
    pub s: u32,
    pub hbase: MonomialArg,
}

/// Sum of `coeff · (a+)^r (a-)^s · hbase^h`, at most one term per `(r, s, hbase)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub algebra: Algebra,
    terms: BTreeMap<(u32, u32, MonomialArg), ExactScalar>,
}

impl NormalForm {
    fn empty(algebra: Algebra) -> Self {
        NormalForm { algebra, terms: BTreeMap::new() }
    }

    fn push(&mut self, r: u32, s: u32, u: MonomialArg, c: ExactScalar) -> Result<(), ScalarError> {
        if c.is_zero() {
            return Ok(());
        }
        let key = (r, s, u);
        let merged = match self.terms.remove(&key) {
            Some(old) => old.try_add(&c)?,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
        Ok(())
    }

    pub fn terms(&self) -> Vec<NormalTerm> {
        self.terms.iter().map(|((r, s, u), c)| NormalTerm { coeff: c.clone(), r: *r, s: *s, hbase: u.clone() }).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn right_mul(&self, g: &Generator) -> Result<NormalForm, ScalarError> {
        let alg = self.algebra;
        let mut out = NormalForm::empty(alg);
        for ((r, s, u), c) in &self.terms {
            let (r, s) = (*r, *s);
            match g {
                Generator::Raise => {
                    let cu = c.mul_monomial(u);
                    if s == 0 {
                        out.push(r + 1, 0, u.clone(), cu)?;
                    } else {
                        // (a-)^s a+ = (a-)^{s-1} (1 - b² (b²)^h)
                        out.push(r, s - 1, u.clone(), cu.clone())?;
                        out.push(r, s - 1, u.mul(&alg.b(2)), cu.mul_monomial(&alg.b(2)).neg())?;
                    }
                }
                Generator::Lower => out.push(r, s + 1, u.clone(), c.mul_monomial(&u.inv()))?,
                Generator::KDiag => out.push(r, s, u.mul(&alg.b(1)), c.mul_monomial(&alg.b_half(1)))?,
                Generator::HPower(v) => out.push(r, s, u.mul(v), c.clone())?,
            }
        }
        Ok(out)
    }

    /// Applies the normal form to `|m>`.
    fn apply_basis(&self, m: u64) -> Vec<(u64, ExactScalar)> {
        let alg = self.algebra;
        let mut out = Vec::new();
        for ((r, s, u), c) in &self.terms {
            if (*s as u64) > m {
                continue;
            }
            let mut amp = c.mul_monomial(&u.pow(m as i32));
            for i in 0..*s as u64 {
                let f = alg.b(2 * (m - i) as i32).one_minus();
                amp = amp.mul(&ExactScalar::from_rat(f));
            }
            out.push((m - *s as u64 + *r as u64, amp));
        }
        out
    }
}

/// Rewrites a word as a sum of normal-ordered terms.
pub fn normal_order(w: &OperatorWord) -> Result<NormalForm, ScalarError> {
    let mut nf = NormalForm::empty(w.algebra);
    if w.scale.is_zero() {
        return Ok(nf);
    }
    nf.push(0, 0, MonomialArg::one(), w.scale.clone())?;
    for g in &w.letters {
        nf = nf.right_mul(g)?;
    }
    Ok(nf)
}

/// Finitely supported vector in a Fock space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedState {
    pub algebra: Algebra,
    pub amps: BTreeMap<u64, ExactScalar>,
}

impl TruncatedState {
    pub fn zero(algebra: Algebra) -> Self {
        TruncatedState { algebra, amps: BTreeMap::new() }
    }

    pub fn basis(algebra: Algebra, m: u64) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert(m, ExactScalar::one());
        TruncatedState { algebra, amps }
    }

    pub fn amp(&self, m: u64) -> ExactScalar {
        self.amps.get(&m).cloned().unwrap_or_default()
    }

    pub fn add_amp(&mut self, m: u64, c: ExactScalar) -> Result<(), ScalarError> {
        if c.is_zero() {
            return Ok(());
        }
        let v = match self.amps.remove(&m) {
            Some(old) => old.try_add(&c)?,
            None => c,
        };
        if !v.is_zero() {
            self.amps.insert(m, v);
        }
        Ok(())
    }

    /// `<m|m>`: `(b²; b²)_m`.
    pub fn norm_sq(algebra: Algebra, m: u64) -> ExactScalar {
        qpoch_finite(&algebra.b(2), (2 * algebra.beta()) as u32, m as u32)
    }

    /// Bilinear pairing `Σ_m self_m · other_m · <m|m>`.
    pub fn pair(&self, other: &TruncatedState) -> Result<ExactScalar, BosonError> {
        if self.algebra != other.algebra {
            return Err(BosonError::AlgebraMismatch);
        }
        let mut acc = ExactScalar::zero();
        for (m, a) in &self.amps {
            if let Some(b) = other.amps.get(m) {
                acc = acc.try_add(&a.mul(b).mul(&TruncatedState::norm_sq(self.algebra, *m)))?;
            }
        }
        Ok(acc)
    }
}

fn apply_letter(alg: Algebra, g: &Generator, m: u64) -> Option<(u64, ExactScalar)> {
    match g {
        Generator::Raise => Some((m + 1, ExactScalar::one())),
        Generator::Lower if m == 0 => None,
        Generator::Lower => Some((m - 1, ExactScalar::from_rat(alg.b(2 * m as i32).one_minus()))),
        Generator::KDiag => Some((m, alg.b_half(2 * m as i32 + 1).into())),
        Generator::HPower(u) => Some((m, u.pow(m as i32).into())),
    }
}

/// Applies a word letter by letter (rightmost first).
pub fn apply_truncated(w: &OperatorWord, v: &TruncatedState) -> Result<TruncatedState, BosonError> {
    if w.algebra != v.algebra {
        return Err(BosonError::AlgebraMismatch);
    }
    let mut cur = v.clone();
    for g in w.letters.iter().rev() {
        let mut next = TruncatedState::zero(w.algebra);
        for (m, a) in &cur.amps {
            if let Some((m2, c)) = apply_letter(w.algebra, g, *m) {
                next.add_amp(m2, a.mul(&c))?;
            }
        }
        cur = next;
    }
    let mut out = TruncatedState::zero(w.algebra);
    for (m, a) in cur.amps {
        out.add_amp(m, a.mul(&w.scale))?;
    }
    Ok(out)
}

/// Applies a normal form to a state.
pub fn apply_normal_form(nf: &NormalForm, v: &TruncatedState) -> Result<TruncatedState, BosonError> {
    if nf.algebra != v.algebra {
        return Err(BosonError::AlgebraMismatch);
    }
    let mut out = TruncatedState::zero(nf.algebra);
    for (m, a) in &v.amps {
        for (m2, c) in nf.apply_basis(*m) {
            out.add_amp(m2, a.mul(&c))?;
        }
    }
    Ok(out)
}

/// `Tr(z^h w) = Σ_m <m| z^h w |m> / <m|m>`.
///
/// Each surviving normal-ordered term `(a+)^σ (a-)^σ u^h` contributes
/// `Z^σ (b²;b²)_σ / (Z;b²)_{σ+1}` with `Z = z·u`.
pub fn trace_eval(w: &OperatorWord, zvar: &MonomialArg) -> Result<ExactScalar, ScalarError> {
    let alg = w.algebra;
    let nf = normal_order(w)?;
    let step2 = (2 * alg.beta()) as u32;
    let mut acc = ExactScalar::zero();
    for t in nf.terms() {
        if t.r != t.s {
            continue;
        }
        let z = zvar.mul(&t.hbase);
        let sigma = t.r;
        let num = qpoch_finite(&alg.b(2), step2, sigma).mul_monomial(&z.pow(sigma as i32));
        let den = qpoch_finite(&z, step2, sigma + 1);
        acc = acc.try_add(&t.coeff.mul(&num).try_div(&den)?)?;
    }
    Ok(acc)
}

const ELIMINATION_BOUND: usize = 1 << 20;

/// `<v_k| z^h w |v_k'>` where `v_s` is `η_s` for the single algebra and `χ_s` for the doubled one.
///
/// Lowering operators are removed against the ket with
/// `a-|v_1> = (1 + b·b^h)|v_1>` and `a-|v_2> = a+|v_2>`, each step lowering
/// `(s, r + s)` lexicographically; the remaining `(a+)^j W^h` terms are
/// summed in closed form.
pub fn boundary_eval(w: &OperatorWord, k: u8, kp: u8, zvar: &MonomialArg) -> Result<ExactScalar, BosonError> {
    for x in [k, kp] {
        if x != 1 && x != 2 {
            return Err(BosonError::BadBoundaryIndex(x));
        }
    }
    let alg = w.algebra;
    let nf = normal_order(w)?;
    let mut pending: Vec<(u32, u32, MonomialArg, ExactScalar)> = nf.terms().into_iter().map(|t| (t.r, t.s, t.hbase, t.coeff)).collect();
    let mut reduced: BTreeMap<(u32, MonomialArg), ExactScalar> = BTreeMap::new();
    let mut steps = 0usize;
    while let Some((r, s, u, c)) = pending.pop() {
        steps += 1;
        if steps > ELIMINATION_BOUND {
            return Err(BosonError::NonTermination);
        }
        if s == 0 {
            let key = (r, u);
            let v = match reduced.remove(&key) {
                Some(old) => old.try_add(&c).map_err(BosonError::from)?,
                None => c,
            };
            if !v.is_zero() {
                reduced.insert(key, v);
            }
            continue;
        }
        // (a-)^s u^h = u (a-)^{s-1} u^h a-
        let cu = c.mul_monomial(&u);
        if kp == 1 {
            pending.push((r, s - 1, u.clone(), cu.clone()));
            pending.push((r, s - 1, u.mul(&alg.b(1)), cu.mul_monomial(&alg.b(1))));
        } else {
            // a- -> a+, then u^h a+ = u a+ u^h, then reorder (a-)^{s-1} a+
            let cuu = cu.mul_monomial(&u);
            if s == 1 {
                pending.push((r + 1, 0, u, cuu));
            } else {
                pending.push((r, s - 2, u.clone(), cuu.clone()));
                pending.push((r, s - 2, u.mul(&alg.b(2)), cuu.mul_monomial(&alg.b(2)).neg()));
            }
        }
    }
    let mut acc = ExactScalar::zero();
    for ((j, wv), c) in reduced {
        let v = raise_closed_form(alg, k, kp, j, zvar, &wv)?;
        acc = acc.try_add(&c.mul(&v)).map_err(BosonError::from)?;
    }
    Ok(acc)
}

/// `<v_k| Z^h (a+)^j W^h |v_k'>`.
fn raise_closed_form(alg: Algebra, k: u8, kp: u8, j: u32, z: &MonomialArg, w: &MonomialArg) -> Result<ExactScalar, ScalarError> {
    let beta = alg.beta() as u32;
    let minus = |m: MonomialArg| m.scaled(&GaussianRational::from_int(-1));
    let ratio = |num: MonomialArg, den: MonomialArg, step: u32| -> Result<ExactScalar, ScalarError> {
        let n = ExactScalar::poch_inf(num, step, 1)?;
        let d = ExactScalar::poch_inf(den, step, -1)?;
        Ok(n.mul(&d))
    };
    let zw = z.mul(w);
    let zw2 = zw.pow(2);
    let ji = j as i32;
    match (k, kp) {
        (1, 1) => {
            let head = qpoch_finite(&minus(alg.b(1)), beta, j).mul_monomial(&z.pow(ji));
            Ok(head.mul(&ratio(minus(alg.b(ji + 1).mul(&zw)), zw, beta)?))
        }
        (1, 2) => {
            let mut acc = ExactScalar::zero();
            for i in 0..=ji {
                let c = qbinomial(j as i64, i as i64, beta).mul_monomial(&alg.b_half(i * (i + 1)));
                let t = ratio(minus(alg.b(2 * i + 1).mul(&zw2)), alg.b(2 * i).mul(&zw2), 2 * beta)?;
                acc = acc.try_add(&c.mul(&t))?;
            }
            Ok(acc.mul_monomial(&z.pow(ji)))
        }
        (2, 1) => {
            let mut acc = ExactScalar::zero();
            for i in 0..=ji {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let c = qbinomial(j as i64, i as i64, beta)
                    .mul_monomial(&alg.b_half(i * (i + 1 - 2 * ji)).scaled(&GaussianRational::from_int(sign)));
                let t = ratio(minus(alg.b(2 * i + 1).mul(&zw2)), alg.b(2 * i).mul(&zw2), 2 * beta)?;
                acc = acc.try_add(&c.mul(&t))?;
            }
            Ok(acc.mul_monomial(&w.pow(-ji)))
        }
        (2, 2) => {
            if j % 2 == 1 {
                return Ok(ExactScalar::zero());
            }
            let head = qpoch_finite(&alg.b(2), 4 * beta, j / 2).mul_monomial(&z.pow(ji));
            Ok(head.mul(&ratio(alg.b(2 * ji + 2).mul(&zw2), zw2, 4 * beta)?))
        }
        _ => unreachable!("boundary indices validated by caller"),
    }
}

/// Kind of boundary vector: `η_s` lives in `F_q`, `χ_s` in `F_{q²}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundaryKind {
    Eta,
    Chi,
}

/// `Σ_{sm ≤ N} |sm> / (b^{s²}; b^{s²})_m`.
pub fn boundary_vector(kind: BoundaryKind, s: u8, truncation: u64) -> Result<TruncatedState, BosonError> {
    if s != 1 && s != 2 {
        return Err(BosonError::BadBoundaryIndex(s));
    }
    let alg = match kind {
        BoundaryKind::Eta => Algebra::Single,
        BoundaryKind::Chi => Algebra::Doubled,
    };
    let s = s as u64;
    let step = (alg.beta() as u64 * s * s) as u32;
    let base = MonomialArg::q(step as i32);
    let mut st = TruncatedState::zero(alg);
    let mut m = 0u64;
    while s * m <= truncation {
        let c = ExactScalar::one().try_div(&qpoch_finite(&base, step, m as u32))?;
        st.add_amp(s * m, c)?;
        m += 1;
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, Var};

    fn word(alg: Algebra, gs: &[Generator]) -> OperatorWord {
        OperatorWord::new(alg, gs.to_vec())
    }

    #[test]
    fn lower_raise_normal_form() {
        let nf = normal_order(&word(Algebra::Single, &[Generator::Lower, Generator::Raise])).unwrap();
        let t = nf.terms();
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|x| x.r == 0 && x.s == 0));
        let q2 = t.iter().find(|x| !x.hbase.is_one()).unwrap();
        assert_eq!(q2.hbase, MonomialArg::q(2));
        assert_eq!(q2.coeff, parse_scalar("-q^2").unwrap());
    }

    #[test]
    fn k_past_raise() {
        // k a+ = q a+ k = q^(3/2) a+ q^h
        let nf = normal_order(&word(Algebra::Single, &[Generator::KDiag, Generator::Raise])).unwrap();
        let t = nf.terms();
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].r, t[0].s), (1, 0));
        assert_eq!(t[0].hbase, MonomialArg::q(1));
        assert_eq!(t[0].coeff, ExactScalar::q_half(3));
    }

    #[test]
    fn empty_word() {
        let t = normal_order(&OperatorWord::identity(Algebra::Doubled)).unwrap().terms();
        assert_eq!(t.len(), 1);
        assert!(t[0].coeff.is_one() && t[0].hbase.is_one() && t[0].r == 0 && t[0].s == 0);
    }

    #[test]
    fn actions_on_basis() {
        let alg = Algebra::Single;
        let v = TruncatedState::basis(alg, 3);
        let k = apply_truncated(&word(alg, &[Generator::KDiag]), &v).unwrap();
        assert_eq!(k.amp(3), ExactScalar::q_half(7));
        let l = apply_truncated(&word(alg, &[Generator::Lower]), &v).unwrap();
        assert_eq!(l.amp(2), parse_scalar("1 - q^6").unwrap());
        let z = apply_truncated(&word(alg, &[Generator::Lower]), &TruncatedState::basis(alg, 0)).unwrap();
        assert!(z.amps.is_empty());
    }

    #[test]
    fn traces() {
        let z = MonomialArg::var(Var::Z);
        let t = trace_eval(&word(Algebra::Doubled, &[Generator::KDiag]), &z).unwrap();
        assert_eq!(t, parse_scalar("q/(1 - q^2*z)").unwrap());
        let t = trace_eval(&OperatorWord::identity(Algebra::Doubled), &z).unwrap();
        assert_eq!(t, parse_scalar("1/(1 - z)").unwrap());
    }

    #[test]
    fn boundary_vectors() {
        let e1 = boundary_vector(BoundaryKind::Eta, 1, 2).unwrap();
        assert_eq!(e1.amp(2), parse_scalar("1/((1-q)*(1-q^2))").unwrap());
        let e2 = boundary_vector(BoundaryKind::Eta, 2, 3).unwrap();
        assert_eq!(e2.amps.len(), 2);
        assert_eq!(e2.amp(2), parse_scalar("1/(1-q^4)").unwrap());
        let c1 = boundary_vector(BoundaryKind::Chi, 1, 1).unwrap();
        assert_eq!(c1.amp(1), parse_scalar("1/(1-q^2)").unwrap());
    }

    #[test]
    fn boundary_closed_form_literal() {
        // <η1| z^h (a+)^2 k |η1>
        let z = MonomialArg::var(Var::Z);
        let w = word(Algebra::Single, &[Generator::Raise, Generator::Raise, Generator::KDiag]);
        let got = boundary_eval(&w, 1, 1, &z).unwrap();
        let want = parse_scalar("q^(1/2)*z^2*(-q;q)_2 * (-q^4*z;q)_inf / (q*z;q)_inf").unwrap();
        assert_eq!(got, want);
        let odd = word(Algebra::Single, &[Generator::Raise, Generator::KDiag]);
        assert!(boundary_eval(&odd, 2, 2, &z).unwrap().is_zero());
    }
}
