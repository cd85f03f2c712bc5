use std::fmt;

use super::gauss::{GInt, GaussianRational};
use super::poly::{fmt_monomial, Exps, Poly, NVARS, ONE_EXPS};
use super::ratfun::RatFun;
use super::{ScalarError, Var};

/// Monomial `coeff · q^(exps[0]/2) z^exps[1] x^exps[2] y^exps[3] w^exps[4]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MonomialArg {
    pub coeff: GaussianRational,
    pub exps: Exps,
}

impl MonomialArg {
    pub fn one() -> Self {
        MonomialArg { coeff: GaussianRational::one(), exps: ONE_EXPS }
    }

    pub fn new(coeff: GaussianRational, exps: Exps) -> Self {
        assert!(!coeff.is_zero(), "monomial coefficient must be nonzero");
        MonomialArg { coeff, exps }
    }

    /// `q^k` for an integer `k`.
    pub fn q(k: i32) -> Self {
        MonomialArg::q_half(2 * k)
    }

    /// `q^(h/2)`.
    pub fn q_half(h: i32) -> Self {
        let mut e = ONE_EXPS;
        e[0] = h;
        MonomialArg { coeff: GaussianRational::one(), exps: e }
    }

    pub fn var(v: Var) -> Self {
        MonomialArg::one().with(v, 1)
    }

    /// Sets the exponent of `v` (for `q`, in whole powers).
    pub fn with(mut self, v: Var, e: i32) -> Self {
        self.exps[v as usize] = if v == Var::Q { 2 * e } else { e };
        self
    }

    pub fn with_coeff(mut self, c: GaussianRational) -> Self {
        assert!(!c.is_zero());
        self.coeff = c;
        self
    }

    pub fn scaled(&self, c: &GaussianRational) -> Self {
        MonomialArg::new(&self.coeff * c, self.exps)
    }

    pub fn mul(&self, o: &MonomialArg) -> Self {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(o.exps) {
            *a += b;
        }
        MonomialArg { coeff: &self.coeff * &o.coeff, exps: e }
    }

    pub fn pow(&self, n: i32) -> Self {
        let mut e = self.exps;
        for x in e.iter_mut() {
            *x *= n;
        }
        MonomialArg { coeff: self.coeff.pow(n).expect("nonzero coefficient"), exps: e }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exps == ONE_EXPS
    }

    /// Exponent of `q` in half units.
    pub fn q_half_exp(&self) -> i32 {
        self.exps[0]
    }

    pub fn to_ratfun(&self) -> RatFun {
        let (n, d) = self.coeff.to_gint_fraction();
        let mut pos = ONE_EXPS;
        let mut neg = ONE_EXPS;
        for k in 0..NVARS {
            if self.exps[k] >= 0 {
                pos[k] = self.exps[k];
            } else {
                neg[k] = -self.exps[k];
            }
        }
        RatFun::from_parts(Poly::monomial(pos, n), Poly::monomial(neg, GInt::real(d))).expect("nonzero")
    }

    /// `1 - self` as a rational function.
    pub fn one_minus(&self) -> RatFun {
        RatFun::one().sub(&self.to_ratfun())
    }
}

impl fmt::Display for MonomialArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = fmt_monomial(&self.exps);
        let c = &self.coeff;
        if m.is_empty() {
            return write!(f, "{}", c);
        }
        if c.is_one() {
            write!(f, "{}", m)
        } else if *c == -&GaussianRational::one() {
            write!(f, "-{}", m)
        } else {
            write!(f, "{}*{}", c, m)
        }
    }
}

/// `(arg; q^step)_∞ ^ exponent`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PochSymbol {
    pub arg: MonomialArg,
    pub step: u32,
    pub exponent: i32,
}

impl fmt::Display for PochSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = if self.step == 1 { "q".to_string() } else { format!("q^({})", self.step) };
        write!(f, "({}; {})_inf", self.arg, base)?;
        if self.exponent != 1 {
            write!(f, "^({})", self.exponent)?;
        }
        Ok(())
    }
}

/// `∏_{k<m} (1 - arg·q^{g k})` as a rational function.
pub(crate) fn finite_product(arg: &MonomialArg, step: u32, m: u32) -> RatFun {
    let mut num = Poly::one();
    let mut den = Poly::one();
    let (c, d) = arg.coeff.to_gint_fraction();
    let dpoly = Poly::constant(GInt::real(d));
    for k in 0..m {
        let mut e = arg.exps;
        e[0] += 2 * (step * k) as i32;
        // (d - c x^e) / d
        let f = dpoly.sub(&Poly::monomial(e, c.clone()));
        num = num.mul(&f);
        den = den.mul(&dpoly);
    }
    RatFun::from_parts(num, den).expect("nonzero denominator")
}

/// Shifts every symbol into the window `0 < q-exponent ≤ step` and merges equal symbols.
/// Returns the canonical multiset and the rational factor produced by the shifts.
pub(crate) fn canonicalize(symbols: Vec<PochSymbol>) -> Result<(Vec<PochSymbol>, RatFun), ScalarError> {
    let mut factor = RatFun::one();
    let mut out: Vec<PochSymbol> = Vec::with_capacity(symbols.len());
    for s in symbols {
        if s.exponent == 0 {
            continue;
        }
        let g = s.step as i32;
        let e = s.arg.q_half_exp();
        let ec = (e - 1).rem_euclid(2 * g) + 1;
        let n = (e - ec) / (2 * g);
        let mut canon = s.arg.clone();
        canon.exps[0] = ec;
        if n > 0 {
            let fp = finite_product(&canon, s.step, n as u32);
            let p = fp.pow(-s.exponent).ok_or(ScalarError::DivisionByZero)?;
            factor = factor.mul(&p);
        } else if n < 0 {
            let fp = finite_product(&s.arg, s.step, (-n) as u32);
            let p = fp.pow(s.exponent).ok_or(ScalarError::DivisionByZero)?;
            factor = factor.mul(&p);
        }
        out.push(PochSymbol { arg: canon, step: s.step, exponent: s.exponent });
    }
    Ok((merge(out), factor))
}

/// Combines multiplicities of identical (arg, step) pairs; output sorted, zeros dropped.
pub(crate) fn merge(mut v: Vec<PochSymbol>) -> Vec<PochSymbol> {
    v.sort_by(|a, b| (&a.arg, a.step).cmp(&(&b.arg, b.step)));
    let mut out: Vec<PochSymbol> = Vec::with_capacity(v.len());
    for s in v {
        match out.last_mut() {
            Some(last) if last.arg == s.arg && last.step == s.step => last.exponent += s.exponent,
            _ => out.push(s),
        }
    }
    out.retain(|s| s.exponent != 0);
    out
}
