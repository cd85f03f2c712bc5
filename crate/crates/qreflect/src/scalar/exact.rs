use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::gauss::{GInt, GaussianRational};
use super::poch::{canonicalize, finite_product, merge, MonomialArg, PochSymbol};
use super::poly::{Exps, Poly, NVARS, ONE_EXPS};
use super::ratfun::RatFun;
use super::{ScalarError, Var};

/// A rational function times a canonical product of infinite q-Pochhammer symbols.
///
/// Every symbol is shifted so that the `q`-exponent of its argument lies in
/// `(0, step]`; the finite products produced by the shift live in the rational
/// part. Equality is structural on the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExactScalar {
    rat: RatFun,
    symbols: Vec<PochSymbol>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { rat: RatFun::zero(), symbols: Vec::new() }
    }

    pub fn one() -> Self {
        ExactScalar::from_rat(RatFun::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::from_poly(Poly::from(n))
    }

    pub fn from_gaussian(c: &GaussianRational) -> Self {
        MonomialArg::one().with_coeff(c.clone()).into()
    }

    pub fn from_rat(rat: RatFun) -> Self {
        ExactScalar { rat, symbols: Vec::new() }
    }

    pub fn from_poly(p: Poly) -> Self {
        ExactScalar::from_rat(RatFun::from_poly(p))
    }

    pub fn var(v: Var) -> Self {
        MonomialArg::var(v).into()
    }

    /// `q^k`.
    pub fn q(k: i32) -> Self {
        MonomialArg::q(k).into()
    }

    /// `q^(h/2)`.
    pub fn q_half(h: i32) -> Self {
        MonomialArg::q_half(h).into()
    }

    /// `(arg; q^step)_∞ ^ exponent`, canonicalized.
    pub fn poch_inf(arg: MonomialArg, step: u32, exponent: i32) -> Result<Self, ScalarError> {
        assert!(step > 0, "Pochhammer step must be positive");
        ExactScalar::with_symbols(RatFun::one(), vec![PochSymbol { arg, step, exponent }])
    }

    /// Builds `rat · ∏ symbols` and canonicalizes.
    pub fn with_symbols(rat: RatFun, symbols: Vec<PochSymbol>) -> Result<Self, ScalarError> {
        let (symbols, factor) = canonicalize(symbols)?;
        let rat = rat.mul(&factor);
        Ok(ExactScalar::assemble(rat, symbols))
    }

    fn assemble(rat: RatFun, symbols: Vec<PochSymbol>) -> Self {
        if rat.is_zero() {
            ExactScalar::zero()
        } else {
            ExactScalar { rat, symbols }
        }
    }

    /// Re-runs canonicalization (idempotent on values built through this API).
    pub fn canonicalize(&self) -> Self {
        ExactScalar::with_symbols(self.rat.clone(), self.symbols.clone()).expect("already canonical")
    }

    pub fn rat(&self) -> &RatFun {
        &self.rat
    }

    pub fn symbols(&self) -> &[PochSymbol] {
        &self.symbols
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.symbols.is_empty() && self.rat.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn try_add(&self, o: &ExactScalar) -> Result<ExactScalar, ScalarError> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.symbols != o.symbols {
            return Err(ScalarError::IncompatibleSymbols);
        }
        Ok(ExactScalar::assemble(self.rat.add(&o.rat), self.symbols.clone()))
    }

    pub fn try_sub(&self, o: &ExactScalar) -> Result<ExactScalar, ScalarError> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> ExactScalar {
        ExactScalar { rat: self.rat.neg(), symbols: self.symbols.clone() }
    }

    pub fn mul(&self, o: &ExactScalar) -> ExactScalar {
        if self.is_zero() || o.is_zero() {
            return ExactScalar::zero();
        }
        let rat = self.rat.mul(&o.rat);
        let symbols = if o.symbols.is_empty() {
            self.symbols.clone()
        } else if self.symbols.is_empty() {
            o.symbols.clone()
        } else {
            merge(self.symbols.iter().chain(o.symbols.iter()).cloned().collect())
        };
        ExactScalar::assemble(rat, symbols)
    }

    pub fn inv(&self) -> Result<ExactScalar, ScalarError> {
        let rat = self.rat.inv().ok_or(ScalarError::DivisionByZero)?;
        let symbols = self.symbols.iter().map(|s| PochSymbol { exponent: -s.exponent, ..s.clone() }).collect();
        Ok(ExactScalar { rat, symbols })
    }

    pub fn try_div(&self, o: &ExactScalar) -> Result<ExactScalar, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<ExactScalar, ScalarError> {
        let rat = self.rat.pow(e).ok_or(ScalarError::DivisionByZero)?;
        let symbols = self.symbols.iter().map(|s| PochSymbol { exponent: s.exponent * e, ..s.clone() }).collect();
        Ok(ExactScalar::assemble(rat, merge(symbols)))
    }

    pub fn mul_monomial(&self, m: &MonomialArg) -> ExactScalar {
        if self.is_zero() {
            return ExactScalar::zero();
        }
        let (n, d) = m.coeff.to_gint_fraction();
        let mut rat = self.rat.mul_monomial(&m.exps, &n);
        if d != BigInt::from(1) {
            rat = rat.mul(&RatFun::from_parts(Poly::one(), Poly::constant(GInt::real(d))).unwrap());
        }
        ExactScalar { rat, symbols: self.symbols.clone() }
    }

    /// Simultaneous monomial substitution. A binding for `q` must be a pure power `q^k`, `k ≥ 1`,
    /// unless the scalar is rational with only whole powers of `q`.
    pub fn substitute(&self, bindings: &[(Var, MonomialArg)]) -> Result<ExactScalar, ScalarError> {
        let mut table: [Option<MonomialArg>; NVARS] = Default::default();
        for (v, m) in bindings {
            table[*v as usize] = Some(m.clone());
        }
        let q_scale = match &table[0] {
            None => Some(1),
            Some(m) => pure_q_power(m),
        };
        if q_scale.is_none() && !self.symbols.is_empty() {
            return Err(ScalarError::NonMonomialSubstitutionIntoSymbol);
        }
        let num = substitute_poly(self.rat.num(), &table, q_scale)?;
        let den = substitute_poly(self.rat.den(), &table, q_scale)?;
        let rat = num.div(&den).ok_or(ScalarError::DivisionByZero)?;
        let mut symbols = Vec::with_capacity(self.symbols.len());
        for s in &self.symbols {
            let arg = substitute_monomial(&s.arg, &table, q_scale)?;
            let step = s.step * q_scale.unwrap() as u32;
            symbols.push(PochSymbol { arg, step, exponent: s.exponent });
        }
        ExactScalar::with_symbols(rat, symbols)
    }

    /// Convenience: substitute a single variable.
    pub fn subst(&self, v: Var, m: MonomialArg) -> Result<ExactScalar, ScalarError> {
        self.substitute(&[(v, m)])
    }

    /// The value as a Laurent polynomial when it is one.
    pub fn to_laurent(&self) -> Option<Poly> {
        if !self.symbols.is_empty() {
            return None;
        }
        self.rat.to_laurent()
    }

    /// The value as a monomial when it is one.
    pub fn to_monomial(&self) -> Option<MonomialArg> {
        if !self.symbols.is_empty() || !self.rat.is_monomial() {
            return None;
        }
        let (en, cn) = self.rat.num().lead()?.clone();
        let (ed, cd) = self.rat.den().lead()?.clone();
        let mut e = ONE_EXPS;
        for k in 0..NVARS {
            e[k] = en[k] - ed[k];
        }
        let c = &GaussianRational::from_gint(&cn) * &GaussianRational::from_gint(&cd).inv()?;
        Some(MonomialArg::new(c, e))
    }
}

fn pure_q_power(m: &MonomialArg) -> Option<i32> {
    let ok = m.coeff.is_one() && m.exps[1..].iter().all(|&x| x == 0) && m.exps[0] > 0 && m.exps[0] % 2 == 0;
    ok.then_some(m.exps[0] / 2)
}

fn substitute_monomial(m: &MonomialArg, table: &[Option<MonomialArg>; NVARS], q_scale: Option<i32>) -> Result<MonomialArg, ScalarError> {
    let mut out = MonomialArg::new(m.coeff.clone(), ONE_EXPS);
    for (k, slot) in table.iter().enumerate() {
        let e = m.exps[k];
        if e == 0 {
            continue;
        }
        match (slot, k) {
            (None, _) => out.exps[k] += e,
            (Some(_), 0) => match q_scale {
                Some(s) => out.exps[0] += e * s,
                None => return Err(ScalarError::NonMonomialSubstitutionIntoSymbol),
            },
            (Some(b), _) => out = out.mul(&b.pow(e)),
        }
    }
    Ok(out)
}

fn substitute_poly(p: &Poly, table: &[Option<MonomialArg>; NVARS], q_scale: Option<i32>) -> Result<RatFun, ScalarError> {
    if table.iter().all(|b| b.is_none()) {
        return Ok(RatFun::from_poly(p.clone()));
    }
    // binding v -> (cn/cd) m; multiply through by prod cd^emax * cn^emin
    let mut emax = [0i32; NVARS];
    let mut emin = [0i32; NVARS];
    for (e, _) in p.terms() {
        for k in 0..NVARS {
            emax[k] = emax[k].max(e[k]);
            emin[k] = emin[k].min(e[k]);
        }
    }
    let fr: Vec<Option<(GInt, GInt)>> = table
        .iter()
        .map(|b| {
            b.as_ref().map(|m| {
                let (n, d) = m.coeff.to_gint_fraction();
                (n, GInt::real(d))
            })
        })
        .collect();
    let mut terms: Vec<(Exps, GInt)> = Vec::with_capacity(p.len());
    for (e, c) in p.terms() {
        let mut ne = ONE_EXPS;
        let mut coeff = c.clone();
        for k in 0..NVARS {
            let x = e[k];
            match (&table[k], k) {
                (None, _) => ne[k] += x,
                (Some(b), 0) if q_scale.is_none() => {
                    if x % 2 != 0 {
                        return Err(ScalarError::HalfPowerSubstitution);
                    }
                    let (cn, cd) = fr[0].as_ref().unwrap();
                    let h = x / 2;
                    let (hmax, hmin) = (emax[0] / 2, emin[0] / 2);
                    coeff = &coeff * &scale_factor(cn, cd, h, hmax, hmin);
                    for (n, be) in ne.iter_mut().zip(b.exps) {
                        *n += be * h;
                    }
                }
                (Some(_), 0) => ne[0] += x * q_scale.unwrap(),
                (Some(b), _) => {
                    let (cn, cd) = fr[k].as_ref().unwrap();
                    coeff = &coeff * &scale_factor(cn, cd, x, emax[k], emin[k]);
                    for (n, be) in ne.iter_mut().zip(b.exps) {
                        *n += be * x;
                    }
                }
            }
        }
        terms.push((ne, coeff));
    }
    let mut den = GInt::one();
    for k in 0..NVARS {
        if let Some((cn, cd)) = &fr[k] {
            if table[k].is_none() || (k == 0 && q_scale.is_some()) {
                continue;
            }
            let (hmax, hmin) = if k == 0 { (emax[0] / 2, emin[0] / 2) } else { (emax[k], emin[k]) };
            den = &den * &cd.pow(hmax.max(0) as u32);
            den = &den * &cn.pow((-hmin).max(0) as u32);
        }
    }
    RatFun::from_parts(Poly::from_terms(terms), Poly::constant(den)).ok_or(ScalarError::DivisionByZero)
}

/// `(cn/cd)^x · cd^emax · cn^(-emin)` as a Gaussian integer.
fn scale_factor(cn: &GInt, cd: &GInt, x: i32, emax: i32, emin: i32) -> GInt {
    let emax = emax.max(0);
    let emin = emin.min(0);
    if x >= 0 {
        &cn.pow(x as u32) * &(&cd.pow((emax - x) as u32) * &cn.pow((-emin) as u32))
    } else {
        &cd.pow((-x + emax) as u32) * &cn.pow((-emin + x) as u32)
    }
}

/// `∏_{k=1}^{m} (1 - arg·q^{g(k-1)})`.
pub fn qpoch_finite(arg: &MonomialArg, step: u32, m: u32) -> ExactScalar {
    ExactScalar::from_rat(finite_product(arg, step, m))
}

/// Gaussian binomial `[m, k]` in the base `q^step`; zero outside `0 ≤ k ≤ m`.
pub fn qbinomial(m: i64, k: i64, step: u32) -> ExactScalar {
    if k < 0 || m < 0 || k > m {
        return ExactScalar::zero();
    }
    ExactScalar::from_poly(qbinomial_poly(m as u32, k as u32, step))
}

/// Pascal recurrence `[m,k] = [m-1,k-1] + b^k [m-1,k]`, polynomial throughout.
pub(crate) fn qbinomial_poly(m: u32, k: u32, step: u32) -> Poly {
    let k = k.min(m - k);
    let mut row: Vec<Poly> = vec![Poly::one()];
    for i in 1..=m {
        let mut next = vec![Poly::zero(); (i.min(k) + 1) as usize];
        for j in 0..=i.min(k) {
            let mut acc = Poly::zero();
            if j >= 1 && ((j - 1) as usize) < row.len() {
                acc = acc.add(&row[(j - 1) as usize]);
            }
            if (j as usize) < row.len() && j < i {
                acc = acc.add(&row[j as usize].mul(&Poly::var_pow(Var::Q, 2 * (step * j) as i32)));
            }
            next[j as usize] = acc;
        }
        row = next;
    }
    row[k as usize].clone()
}

impl From<MonomialArg> for ExactScalar {
    fn from(m: MonomialArg) -> Self {
        ExactScalar::from_rat(m.to_ratfun())
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    /// # Panics
    /// On mismatched Pochhammer parts; use [`ExactScalar::try_add`] to handle that case.
    fn add(self, o: &ExactScalar) -> ExactScalar {
        self.try_add(o).expect("incompatible Pochhammer parts")
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        self.try_sub(o).expect("incompatible Pochhammer parts")
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar::mul(self, o)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::neg(self)
    }
}

impl fmt::Display for ExactScalar {
    /// `num`, or `(num) / (den)`, followed by ` * (arg; q^(g))_inf^(e)` factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rat)?;
        for s in &self.symbols {
            write!(f, " * {}", s)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_relation_cancels() {
        let u = MonomialArg::var(Var::Z).with(Var::Q, 1);
        let lhs = ExactScalar::poch_inf(u.clone(), 2, 1).unwrap();
        let rhs = ExactScalar::from_rat(u.one_minus()).mul(&ExactScalar::poch_inf(u.mul(&MonomialArg::q(2)), 2, 1).unwrap());
        assert!(lhs.try_sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn qbinomial_base_q_squared() {
        let b = qbinomial(3, 1, 2);
        let expect = Poly::one().add(&Poly::var_pow(Var::Q, 4)).add(&Poly::var_pow(Var::Q, 8));
        assert_eq!(b, ExactScalar::from_poly(expect));
        assert!(qbinomial(2, 3, 1).is_zero());
    }

    #[test]
    fn substitution_with_rational_coefficient() {
        // (1 - z)/(1 - q^4 z) at z = 1/2 q
        let z = ExactScalar::var(Var::Z);
        let s = (&ExactScalar::one() - &z).try_div(&(&ExactScalar::one() - &z.mul(&ExactScalar::q(4)))).unwrap();
        let m = MonomialArg::q(1).with_coeff(GaussianRational::from_frac(1, 2));
        let t = s.subst(Var::Z, m).unwrap();
        let q = ExactScalar::q(1);
        let two = ExactScalar::from_int(2);
        let expect = (&two - &q).try_div(&(&two - &q.pow(5).unwrap())).unwrap();
        assert_eq!(t, expect);
    }
}
