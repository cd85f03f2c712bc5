use std::fmt;

use super::gauss::GInt;
use super::gcd::gcd;
use super::poly::{Exps, Poly, NVARS, ONE_EXPS};

/// Reduced fraction `num / den` of polynomials over ℤ[i].
///
/// Canonical form: `num` and `den` have nonnegative exponents, are coprime
/// (including their ℤ[i] contents), and the lex-leading coefficient of `den`
/// satisfies `re > 0, im ≥ 0`. Equal functions therefore have equal fields.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// From a Laurent polynomial.
    pub fn from_poly(p: Poly) -> Self {
        RatFun::from_parts(p, Poly::one()).expect("nonzero denominator")
    }

    /// Builds the canonical form of `num / den`; `None` if `den` is zero.
    pub fn from_parts(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFun::zero());
        }
        let (num, den) = clear_monomials(num, den);
        let g = gcd(&num, &den);
        let (num, den) =
            if g.is_one() { (num, den) } else { (num.try_div(&g).expect("gcd divides"), den.try_div(&g).expect("gcd divides")) };
        Some(RatFun::normalized(num, den))
    }

    /// Assumes `num`, `den` coprime with nonnegative exponents; fixes the unit.
    fn normalized(num: Poly, den: Poly) -> Self {
        let (den, u) = den.unit_normalized();
        let num = num.scale(&u);
        RatFun { num, den }
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFun { num: n, den: Poly::one() };
            }
            return RatFun::reduce_against(n, self.den.clone(), &self.den);
        }
        if self.den.is_one() {
            return RatFun { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatFun { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return RatFun::normalized(n, self.den.mul(&o.den));
        }
        let da = self.den.try_div(&g).expect("gcd divides");
        let db = o.den.try_div(&g).expect("gcd divides");
        let n = self.num.mul(&db).add(&o.num.mul(&da));
        let d = da.mul(&o.den);
        RatFun::reduce_against(n, d, &g)
    }

    /// `n / d` where any common factor of `n` and `d` divides `g`.
    fn reduce_against(n: Poly, d: Poly, g: &Poly) -> RatFun {
        if n.is_zero() {
            return RatFun::zero();
        }
        let h = gcd(&n, g);
        if h.is_one() {
            RatFun::normalized(n, d)
        } else {
            RatFun::normalized(n.try_div(&h).expect("gcd divides"), d.try_div(&h).expect("gcd divides"))
        }
    }

    pub fn sub(&self, o: &RatFun) -> RatFun {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let (a, d) =
            if g1.is_one() { (self.num.clone(), o.den.clone()) } else { (self.num.try_div(&g1).unwrap(), o.den.try_div(&g1).unwrap()) };
        let (c, b) =
            if g2.is_one() { (o.num.clone(), self.den.clone()) } else { (o.num.try_div(&g2).unwrap(), self.den.try_div(&g2).unwrap()) };
        RatFun::normalized(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Option<RatFun> {
        if self.is_zero() {
            return None;
        }
        Some(RatFun::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFun) -> Option<RatFun> {
        Some(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Option<RatFun> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Some(RatFun { num: base.num.pow(k), den: base.den.pow(k) }.renormalized())
    }

    fn renormalized(self) -> RatFun {
        RatFun::normalized(self.num, self.den)
    }

    /// Multiplies by the Laurent monomial `c · x^e`.
    pub fn mul_monomial(&self, e: &Exps, c: &GInt) -> RatFun {
        if c.is_zero() || self.is_zero() {
            return RatFun::zero();
        }
        let mut pos = ONE_EXPS;
        let mut neg = ONE_EXPS;
        for k in 0..NVARS {
            if e[k] >= 0 {
                pos[k] = e[k];
            } else {
                neg[k] = -e[k];
            }
        }
        let num = self.num.mul_monomial(&pos, c);
        let den = self.den.shift(&neg);
        RatFun::from_parts(num, den).expect("nonzero denominator")
    }

    /// If this function is a Laurent polynomial, returns it.
    pub fn to_laurent(&self) -> Option<Poly> {
        if !self.den.is_monomial() {
            return None;
        }
        let (e, c) = self.den.lead().unwrap().clone();
        let mut ne = e;
        for x in ne.iter_mut() {
            *x = -*x;
        }
        if c.is_one() {
            return Some(self.num.shift(&ne));
        }
        self.num.div_scalar_exact(&c).map(|p| p.shift(&ne))
    }

    pub fn is_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }
}

/// Moves monomial factors so both parts are ordinary polynomials without a common monomial.
fn clear_monomials(num: Poly, den: Poly) -> (Poly, Poly) {
    let mn = num.min_exps();
    let md = den.min_exps();
    if mn == ONE_EXPS && md == ONE_EXPS {
        return (num, den);
    }
    let mut sn = ONE_EXPS;
    let mut sd = ONE_EXPS;
    for k in 0..NVARS {
        let net = mn[k] - md[k];
        if net >= 0 {
            sn[k] = net - mn[k];
            sd[k] = -md[k];
        } else {
            sn[k] = -mn[k];
            sd[k] = -net - md[k];
        }
    }
    (num.shift(&sn), den.shift(&sd))
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Var;

    fn q(e: i32) -> Poly {
        Poly::var_pow(Var::Q, 2 * e)
    }

    #[test]
    fn reduces_common_factor() {
        let r = RatFun::from_parts(Poly::one().sub(&q(4)), Poly::one().sub(&q(2))).unwrap();
        assert_eq!(r, RatFun::from_poly(Poly::one().add(&q(2))));
    }

    #[test]
    fn addition_over_common_denominator() {
        let d = Poly::one().sub(&q(1));
        let a = RatFun::from_parts(q(1), d.clone()).unwrap();
        let b = RatFun::from_parts(q(2), d.clone()).unwrap();
        let s = a.add(&b);
        assert_eq!(s, RatFun::from_parts(q(1).add(&q(2)), d).unwrap());
    }

    #[test]
    fn laurent_inputs_are_cleared() {
        let r = RatFun::from_parts(q(-1), q(2)).unwrap();
        assert_eq!(r.num(), &Poly::one());
        assert_eq!(r.den(), &q(3));
        assert_eq!(r.to_laurent(), Some(q(-3)));
    }
}
