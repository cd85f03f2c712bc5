use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Gaussian integer `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GInt { re, im }
    }

    pub fn real(re: impl Into<BigInt>) -> Self {
        GInt { re: re.into(), im: BigInt::zero() }
    }

    pub fn i() -> Self {
        GInt { re: BigInt::zero(), im: BigInt::one() }
    }

    pub fn zero() -> Self {
        GInt::default()
    }

    pub fn one() -> Self {
        GInt::real(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> GInt {
        GInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn pow(&self, mut e: u32) -> GInt {
        let mut base = self.clone();
        let mut acc = GInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> GInt {
        GInt { re: &self.re * k, im: &self.im * k }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &GInt) -> Option<GInt> {
        if d.im.is_zero() {
            let (qr, rr) = self.re.div_rem(&d.re);
            if !rr.is_zero() {
                return None;
            }
            let (qi, ri) = self.im.div_rem(&d.re);
            if !ri.is_zero() {
                return None;
            }
            return Some(GInt { re: qr, im: qi });
        }
        let n = d.norm();
        let p = self * &d.conj();
        let (qr, rr) = p.re.div_rem(&n);
        let (qi, ri) = p.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GInt { re: qr, im: qi })
        } else {
            None
        }
    }

    fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
        // nearest integer to a/n for n > 0
        let two = BigInt::from(2);
        (a * &two + n).div_floor(&(n * &two))
    }

    fn rem_euclid(&self, d: &GInt) -> GInt {
        let n = d.norm();
        let p = self * &d.conj();
        let q = GInt { re: Self::round_div(&p.re, &n), im: Self::round_div(&p.im, &n) };
        self - &(&q * d)
    }

    /// Greatest common divisor, unit-normalized.
    pub fn gcd(&self, other: &GInt) -> GInt {
        if self.im.is_zero() && other.im.is_zero() {
            return GInt::real(self.re.gcd(&other.re));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_euclid(&b);
            a = b;
            b = r;
        }
        a.unit_normalized().0
    }

    /// Multiplies by the unit that moves `self` into the sector `re > 0, im ≥ 0`.
    /// Returns the normalized value and the unit used.
    pub fn unit_normalized(&self) -> (GInt, GInt) {
        if self.is_zero() {
            return (GInt::zero(), GInt::one());
        }
        let units = [GInt::one(), GInt::i(), GInt::real(-1), GInt { re: BigInt::zero(), im: BigInt::from(-1) }];
        for u in units {
            let v = self * &u;
            if v.re.is_positive() && !v.im.is_negative() {
                return (v, u);
            }
        }
        unreachable!("some unit rotates a nonzero Gaussian integer into the first quadrant")
    }

    pub fn max_abs_component(&self) -> BigInt {
        let a = self.re.abs();
        let b = self.im.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Component-wise symmetric residue modulo a positive integer.
    pub fn symmetric_mod(&self, m: &BigInt) -> GInt {
        fn sm(a: &BigInt, m: &BigInt) -> BigInt {
            let r = a.mod_floor(m);
            if &r * 2 > *m {
                r - m
            } else {
                r
            }
        }
        GInt { re: sm(&self.re, m), im: sm(&self.im, m) }
    }
}

impl<'a> Add<&'a GInt> for &'a GInt {
    type Output = GInt;
    fn add(self, o: &GInt) -> GInt {
        GInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GInt> for &'a GInt {
    type Output = GInt;
    fn sub(self, o: &GInt) -> GInt {
        GInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GInt> for &'a GInt {
    type Output = GInt;
    fn mul(self, o: &GInt) -> GInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GInt { re: &self.re * &o.re, im: BigInt::zero() };
        }
        GInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Neg for GInt {
    type Output = GInt;
    fn neg(self) -> GInt {
        GInt { re: -self.re, im: -self.im }
    }
}

impl Neg for &GInt {
    type Output = GInt;
    fn neg(self) -> GInt {
        GInt { re: -&self.re, im: -&self.im }
    }
}

impl PartialOrd for GInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GInt {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.re, &self.im).cmp(&(&other.re, &other.im))
    }
}

/// Element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GaussianRational {
    pub real: BigRational,
    pub imag: BigRational,
}

impl GaussianRational {
    pub fn new(real: BigRational, imag: BigRational) -> Self {
        GaussianRational { real, imag }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational { real: BigRational::from_integer(n.into()), imag: BigRational::zero() }
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        GaussianRational { real: BigRational::new(n.into(), d.into()), imag: BigRational::zero() }
    }

    pub fn i() -> Self {
        GaussianRational { real: BigRational::zero(), imag: BigRational::one() }
    }

    pub fn zero() -> Self {
        GaussianRational::from_int(0)
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.real.is_zero() && self.imag.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.real.is_one() && self.imag.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { real: self.real.clone(), imag: -&self.imag }
    }

    pub fn norm(&self) -> BigRational {
        &self.real * &self.real + &self.imag * &self.imag
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational { real: &self.real / &n, imag: -&self.imag / &n })
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = GaussianRational::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn from_gint(g: &GInt) -> Self {
        GaussianRational { real: BigRational::from_integer(g.re.clone()), imag: BigRational::from_integer(g.im.clone()) }
    }

    /// Writes `self = num / den` with `num` a Gaussian integer and `den` a positive integer.
    pub fn to_gint_fraction(&self) -> (GInt, BigInt) {
        let den = self.real.denom().lcm(self.imag.denom());
        let re = self.real.numer() * (&den / self.real.denom());
        let im = self.imag.numer() * (&den / self.imag.denom());
        (GInt { re, im }, den)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { real: &self.real + &o.real, imag: &self.imag + &o.imag }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { real: &self.real - &o.real, imag: &self.imag - &o.imag }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { real: &self.real * &o.real - &self.imag * &o.imag, imag: &self.real * &o.imag + &self.imag * &o.real }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { real: -&self.real, imag: -&self.imag }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// `a`, `bi`, or `(a+bi)`; the imaginary unit is written directly after its coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = |r: &BigRational| {
            if r.is_one() {
                "i".to_string()
            } else if *r == -BigRational::one() {
                "-i".to_string()
            } else if r.denom().is_one() {
                format!("{}i", r.numer())
            } else {
                format!("{}*i", fmt_rational(r))
            }
        };
        match (self.real.is_zero(), self.imag.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.real)),
            (true, false) => write!(f, "{}", im(&self.imag)),
            (false, false) => {
                let i = im(&self.imag);
                let sep = if i.starts_with('-') { "" } else { "+" };
                write!(f, "({}{}{})", fmt_rational(&self.real), sep, i)
            }
        }
    }
}

impl fmt::Display for GInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        GaussianRational::from_gint(self).fmt(f)
    }
}
