use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::gauss::GInt;
use super::Var;

pub const NVARS: usize = 5;

/// Exponent vector in the order `q, z, x, y, w`. The `q` slot counts half powers.
pub type Exps = [i32; NVARS];

pub const ONE_EXPS: Exps = [0; NVARS];

/// Sparse Laurent polynomial over ℤ[i], terms sorted by descending lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    terms: Vec<(Exps, GInt)>,
}

impl Default for Poly {
    fn default() -> Self {
        Poly::zero()
    }
}

fn merge_sorted(a: &[(Exps, GInt)], b: &[(Exps, GInt)], negate_b: bool) -> Vec<(Exps, GInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

fn add_exps(a: &Exps, b: &Exps) -> Exps {
    let mut r = *a;
    for k in 0..NVARS {
        r[k] += b[k];
    }
    r
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GInt::one())
    }

    pub fn constant(c: GInt) -> Self {
        Poly::monomial(ONE_EXPS, c)
    }

    pub fn monomial(e: Exps, c: GInt) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(e, c)] }
        }
    }

    /// `v^e`; for `q` the exponent is in half units.
    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut x = ONE_EXPS;
        x[v as usize] = e;
        Poly::monomial(x, GInt::one())
    }

    /// Builds from unsorted terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exps, GInt)>) -> Self {
        let mut map: HashMap<Exps, GInt> = HashMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&e) {
                Some(x) => *x = &*x + &c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        let mut v: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms: v }
    }

    pub fn terms(&self) -> &[(Exps, GInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == ONE_EXPS && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == ONE_EXPS)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<GInt> {
        match self.terms.len() {
            0 => Some(GInt::zero()),
            1 if self.terms[0].0 == ONE_EXPS => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Exps, GInt)> {
        self.terms.first()
    }

    pub fn lc(&self) -> GInt {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    pub fn has_gaussian_coeffs(&self) -> bool {
        self.terms.iter().any(|t| !t.1.is_real())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        Poly { terms: merge_sorted(&self.terms, &o.terms, false) }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        if o.is_zero() {
            return self.clone();
        }
        Poly { terms: merge_sorted(&self.terms, &o.terms, true) }
    }

    pub fn scale(&self, c: &GInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn scale_int(&self, c: &BigInt) -> Poly {
        self.scale(&GInt::real(c.clone()))
    }

    pub fn mul_monomial(&self, e: &Exps, c: &GInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(x, k)| (add_exps(x, e), k * c)).collect() }
    }

    pub fn shift(&self, e: &Exps) -> Poly {
        Poly { terms: self.terms.iter().map(|(x, k)| (add_exps(x, e), k.clone())).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_monomial(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() <= 8 {
            let mut acc = Poly::zero();
            for (e, c) in &small.terms {
                acc = acc.add(&big.mul_monomial(e, c));
            }
            return acc;
        }
        let mut map: HashMap<Exps, GInt> = HashMap::with_capacity(small.len() * big.len());
        for (ea, ca) in &small.terms {
            for (eb, cb) in &big.terms {
                let e = add_exps(ea, eb);
                let p = ca * cb;
                match map.get_mut(&e) {
                    Some(x) => *x = &*x + &p,
                    None => {
                        map.insert(e, p);
                    }
                }
            }
        }
        let mut v: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms: v }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Component-wise minimum exponent over all terms (zero vector for the zero polynomial).
    pub fn min_exps(&self) -> Exps {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else { return ONE_EXPS };
        let mut m = first.0;
        for (e, _) in it {
            for k in 0..NVARS {
                m[k] = m[k].min(e[k]);
            }
        }
        m
    }

    pub fn max_exps(&self) -> Exps {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else { return ONE_EXPS };
        let mut m = first.0;
        for (e, _) in it {
            for k in 0..NVARS {
                m[k] = m[k].max(e[k]);
            }
        }
        m
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.iter().map(|t| t.0[v]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.0[v] != 0)
    }

    /// Gcd of all coefficients, unit-normalized so that `self / content` has a normalized leading coefficient.
    pub fn content(&self) -> GInt {
        let mut g = GInt::zero();
        for (_, c) in &self.terms {
            g = if g.is_zero() { c.unit_normalized().0 } else { g.gcd(c) };
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_scalar_exact(&self, c: &GInt) -> Option<Poly> {
        if c.is_one() {
            return Some(self.clone());
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, x) in &self.terms {
            out.push((*e, x.div_exact(c)?));
        }
        Some(Poly { terms: out })
    }

    /// Multiplies by the unit making the leading coefficient lie in `re > 0, im ≥ 0`.
    pub fn unit_normalized(&self) -> (Poly, GInt) {
        if self.is_zero() {
            return (Poly::zero(), GInt::one());
        }
        let (_, u) = self.terms[0].1.unit_normalized();
        (self.scale(&u), u)
    }

    /// Exact division in the polynomial ring, `None` if `d` does not divide `self`.
    /// Both operands are expected to have nonnegative exponents.
    pub fn try_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (de, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let mut ne = *e;
                for k in 0..NVARS {
                    ne[k] -= de[k];
                    if ne[k] < 0 {
                        return None;
                    }
                }
                out.push((ne, c.div_exact(dc)?));
            }
            return Some(Poly { terms: out });
        }
        let (dle, dlc) = &d.terms[0];
        // cheap rejection on per-variable degree
        let (smax, smin) = (self.max_exps(), self.min_exps());
        let (dmax, dmin) = (d.max_exps(), d.min_exps());
        for k in 0..NVARS {
            if smax[k] - smin[k] < dmax[k] - dmin[k] {
                return None;
            }
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Exps, GInt)> = Vec::new();
        while let Some((re, rc)) = rem.terms.first().cloned() {
            let mut qe = re;
            for k in 0..NVARS {
                qe[k] -= dle[k];
                if qe[k] < 0 {
                    return None;
                }
            }
            let qc = rc.div_exact(dlc)?;
            rem = rem.sub(&d.mul_monomial(&qe, &qc));
            quot.push((qe, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Substitutes an integer value for variable `v`.
    pub fn eval_var(&self, v: usize, val: &GInt) -> Poly {
        let mut powers: HashMap<i32, GInt> = HashMap::new();
        let terms = self.terms.iter().map(|(e, c)| {
            let p = powers.entry(e[v]).or_insert_with(|| val.pow(e[v] as u32)).clone();
            let mut ne = *e;
            ne[v] = 0;
            (ne, c * &p)
        });
        Poly::from_terms(terms.collect::<Vec<_>>())
    }

    /// Splits into coefficients of `v^k` for `k = 0..=deg` (nonnegative exponents assumed).
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v).max(0) as usize;
        let mut buckets: Vec<Vec<(Exps, GInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = *e;
            let d = ne[v] as usize;
            ne[v] = 0;
            buckets[d].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut b| {
                b.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
                Poly { terms: b }
            })
            .collect()
    }

    pub fn from_coeffs_in(v: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = ONE_EXPS;
            e[v] = k as i32;
            acc = acc.add(&c.shift(&e));
        }
        acc
    }

    /// Maps every exponent vector through `f` (coefficients untouched).
    pub fn map_exps(&self, f: impl Fn(&Exps) -> Exps) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())).collect::<Vec<_>>())
    }

    pub fn max_coeff_abs(&self) -> BigInt {
        self.terms.iter().map(|t| t.1.max_abs_component()).max().unwrap_or_default()
    }

    pub fn is_real(&self) -> bool {
        !self.has_gaussian_coeffs()
    }

    pub fn has_negative_exps(&self) -> bool {
        self.min_exps().iter().any(|&x| x < 0)
    }

    pub fn into_terms(self) -> Vec<(Exps, GInt)> {
        self.terms
    }
}

pub(crate) fn fmt_monomial(e: &Exps) -> String {
    let mut parts = Vec::new();
    for (k, &x) in e.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let name = Var::ALL[k].name();
        if k == Var::Q as usize {
            if x == 2 {
                parts.push(name.to_string());
            } else if x % 2 == 0 {
                parts.push(format!("{}^({})", name, x / 2));
            } else {
                parts.push(format!("{}^({}/2)", name, x));
            }
        } else if x == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{}^({})", name, x));
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mono = fmt_monomial(e);
            let negative_real = c.re.is_negative() || (c.re.is_zero() && c.im.is_negative());
            let abs = if negative_real { -c } else { c.clone() };
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", abs, mono)
            };
            match (idx, negative_real) {
                (0, false) => write!(f, "{}", body)?,
                (0, true) => write!(f, "-{}", body)?,
                (_, false) => write!(f, " + {}", body)?,
                (_, true) => write!(f, " - {}", body)?,
            }
        }
        Ok(())
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::constant(GInt::real(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> Poly {
        Poly::var_pow(Var::Q, 2 * e)
    }

    #[test]
    fn product_and_exact_division() {
        let a = Poly::one().sub(&q(2));
        let b = Poly::one().add(&q(2));
        let p = a.mul(&b);
        assert_eq!(p, Poly::one().sub(&q(4)));
        assert_eq!(p.try_div(&a), Some(b.clone()));
        assert_eq!(p.try_div(&Poly::one().add(&q(3))), None);
    }

    #[test]
    fn display_uses_descending_lex() {
        let z = Poly::var_pow(Var::Z, 1);
        let p = q(2).mul(&z).sub(&Poly::one());
        assert_eq!(p.to_string(), "q^(2)*z - 1");
        assert_eq!(Poly::var_pow(Var::Q, -1).to_string(), "q^(-1/2)");
    }
}
