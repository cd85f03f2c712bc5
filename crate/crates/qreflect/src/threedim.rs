//! Matrix elements of the 3D R and 3D K, the local L and K operators, and
//! their action on finitely supported tensors of Fock states.
//!
//! Elements are Laurent polynomials in `q` and are memoized by index tuple.
//! `R̂` acts on `F_q ⊗ F_q ⊗ F_q`; its `q ↦ q²` image `𝓡` acts on three copies
//! of `F_{q²}`; `𝒦` acts on `F_{q²} ⊗ F_q ⊗ F_{q²} ⊗ F_q`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use dashmap::DashMap;
use serde::Serialize;

use crate::qboson::{Algebra, Generator, OperatorWord};
use crate::scalar::{qbinomial_poly, ExactScalar, Exps, Poly, RatFun, Var};

fn q_pow(e: i64) -> Poly {
    Poly::var_pow(Var::Q, 2 * e as i32)
}

fn sign(n: i64) -> Poly {
    if n.rem_euclid(2) == 0 {
        Poly::one()
    } else {
        Poly::one().neg()
    }
}

static POCH: LazyLock<DashMap<(u32, u32), Poly>> = LazyLock::new(DashMap::new);

/// `(q^step; q^step)_n`.
fn poch(step: u32, n: u32) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    if let Some(p) = POCH.get(&(step, n)) {
        return p.clone();
    }
    let p = poch(step, n - 1).mul(&Poly::one().sub(&q_pow((step * n) as i64)));
    POCH.insert((step, n), p.clone());
    p
}

/// `∏_{t=from+1}^{to} (1 - q^{step·t})`, i.e. `(q^step)_to / (q^step)_from`.
fn poch_ratio(step: u32, from: u32, to: u32) -> Poly {
    let mut acc = Poly::one();
    for t in from + 1..=to {
        acc = acc.mul(&Poly::one().sub(&q_pow((step * t) as i64)));
    }
    acc
}

fn nonneg(xs: &[i64]) -> Option<Vec<u32>> {
    xs.iter().map(|&x| u32::try_from(x).ok()).collect()
}

/// `∏(q²)_{n_k} / ∏(q²)_{d_k}` as a pair of polynomials, or `None` if some argument is negative.
fn multinomial_parts(nums: &[i64], dens: &[i64]) -> Option<(Poly, Poly)> {
    let nums = nonneg(nums)?;
    let dens = nonneg(dens)?;
    let num = nums.iter().fold(Poly::one(), |acc, &n| acc.mul(&poch(2, n)));
    let den = dens.iter().fold(Poly::one(), |acc, &n| acc.mul(&poch(2, n)));
    Some((num, den))
}

/// The multinomial symbol `{n_1 … n_r / d_1 … d_s}`: `∏(q²)_{n_k}/∏(q²)_{d_k}`,
/// or zero when any argument is negative.
pub fn multinomial_symbol(nums: &[i64], dens: &[i64]) -> ExactScalar {
    match multinomial_parts(nums, dens) {
        Some((n, d)) => ExactScalar::from_rat(RatFun::from_parts(n, d).expect("nonzero denominator")),
        None => ExactScalar::zero(),
    }
}

static R3D: LazyLock<DashMap<[u32; 6], Poly>> = LazyLock::new(DashMap::new);
static K3D: LazyLock<DashMap<[u32; 8], Poly>> = LazyLock::new(DashMap::new);

/// `R̂^{a,b,c}_{i,j,k}` as a Laurent polynomial in `q`.
pub fn r3d_poly(idx: [u32; 6]) -> Poly {
    if let Some(p) = R3D.get(&idx) {
        return p.clone();
    }
    let p = r3d_compute(idx);
    R3D.insert(idx, p.clone());
    p
}

fn r3d_compute([a, b, c, i, j, k]: [u32; 6]) -> Poly {
    if a + b != i + j || b + c != j + k {
        return Poly::zero();
    }
    let (ci, cj, ck, cc) = (i as i64, j as i64, k as i64, c as i64);
    let mut acc = Poly::zero();
    for mu in 0..=b.min(i) {
        let lambda = b - mu;
        if lambda > j {
            continue;
        }
        let (l, m) = (lambda as i64, mu as i64);
        let e = ci * (cc - cj) + (ck + 1) * l + m * (m - ck);
        let t = sign(l).mul(&q_pow(e)).mul(&poch_ratio(2, c, c + mu)).mul(&qbinomial_poly(i, mu, 2)).mul(&qbinomial_poly(j, lambda, 2));
        acc = acc.add(&t);
    }
    acc
}

/// `R̂^{a,b,c}_{i,j,k}`.
pub fn r3d_element(a: u32, b: u32, c: u32, i: u32, j: u32, k: u32) -> ExactScalar {
    ExactScalar::from_poly(r3d_poly([a, b, c, i, j, k]))
}

/// `q ↦ q²` on a polynomial in `q` alone.
pub fn double_q(p: &Poly) -> Poly {
    p.map_exps(|e| {
        let mut e: Exps = *e;
        e[0] *= 2;
        e
    })
}

/// `𝒦^{a,b,c,d}_{i,j,k,l}` as a Laurent polynomial in `q`.
pub fn k3d_poly(idx: [u32; 8]) -> Poly {
    if let Some(p) = K3D.get(&idx) {
        return p.clone();
    }
    let p = k3d_compute(idx);
    K3D.insert(idx, p.clone());
    p
}

static BINOM: LazyLock<DashMap<(u32, u32), Poly>> = LazyLock::new(DashMap::new);

/// `[m, k]_{q²}`, zero outside `0 ≤ k ≤ m`.
fn binom2(m: i64, k: i64) -> Poly {
    if m < 0 || k < 0 || k > m {
        return Poly::zero();
    }
    let key = (m as u32, k as u32);
    if let Some(p) = BINOM.get(&key) {
        return p.clone();
    }
    let p = qbinomial_poly(key.0, key.1, 2);
    BINOM.insert(key, p.clone());
    p
}

/// `𝒦^{a,b,0,d}_{i,j,0,l}`.
fn k3d_rest(a: i64, b: i64, d: i64, i: i64, j: i64, l: i64) -> Poly {
    if a < 0 || b < 0 || d < 0 || i < 0 || j < 0 || l < 0 || a + b != i + j || b + d != j + l {
        return Poly::zero();
    }
    let mut acc = Poly::zero();
    for lambda in 0..=l.min(b) {
        // {j, l / λ, l-λ, b-λ, j-b+λ} = [l, λ] [j, b-λ]
        let multi = binom2(l, lambda).mul(&binom2(j, b - lambda));
        if multi.is_zero() {
            continue;
        }
        let phi2 = (i + a + 1) * (b + l - 2 * lambda) + b - l;
        let t = sign(b + lambda).mul(&poch_ratio(4, a as u32, (a + lambda) as u32)).mul(&q_pow(phi2)).mul(&multi);
        acc = acc.add(&t);
    }
    acc
}

/// Exact quotient of Laurent polynomials in `q`.
fn laurent_div(n: &Poly, d: &Poly) -> Option<Poly> {
    if n.is_zero() {
        return Some(Poly::zero());
    }
    let shift = n.min_exps()[0].min(0);
    let mut up = [0i32; 5];
    up[0] = -shift;
    let mut down = [0i32; 5];
    down[0] = shift;
    Some(n.shift(&up).try_div(d)?.shift(&down))
}

fn k3d_compute(idx: [u32; 8]) -> Poly {
    let [a, b, c, d, i, j, k, l] = idx.map(|x| x as i64);
    if a + b + c != i + j + k || b + 2 * c + d != j + 2 * k + l {
        return Poly::zero();
    }
    if c == 0 && k == 0 {
        return k3d_rest(a, b, d, i, j, l);
    }
    // every summand times (q²)_b (q²)_d (q⁴)_c is a polynomial
    let mut acc = Poly::zero();
    for alpha in 0..=b.min(d).min(k) {
        for beta in 0..=(k - alpha).min(c) {
            for gamma in 0..=(c - beta) {
                let s = alpha + beta + gamma;
                let inner = k3d_rest(i, j + k - s, l + k - s, a, b + c - s, c + d - s);
                if inner.is_zero() {
                    continue;
                }
                let (jk, kl) = (j + k - alpha - beta, k + l - alpha - beta);
                if jk < 0 || kl < 0 {
                    continue;
                }
                let multi = binom2(k, alpha)
                    .mul(&binom2(k - alpha, beta))
                    .mul(&binom2(c - beta, gamma))
                    .mul(&poch(2, jk as u32))
                    .mul(&poch(2, kl as u32))
                    .mul(&poch_ratio(2, (b - alpha) as u32, b as u32))
                    .mul(&poch_ratio(2, (d - alpha) as u32, d as u32))
                    .mul(&poch_ratio(4, (c - beta) as u32, c as u32));
                if multi.is_zero() {
                    continue;
                }
                let phi1 = alpha * (alpha + 2 * c - 2 * beta - 1) + (2 * beta - c) * (b + c + d) + gamma * (gamma - 1) - k * (j + k + l);
                acc = acc.add(&multi.mul(&inner).mul(&sign(alpha + gamma)).mul(&q_pow(phi1)));
            }
        }
    }
    let den = poch(2, b as u32).mul(&poch(2, d as u32)).mul(&poch(4, c as u32)).mul(&poch(4, a as u32));
    laurent_div(&acc.mul(&poch(4, i as u32)), &den).expect("3D K elements are Laurent polynomials")
}

/// `𝒦^{a,b,c,d}_{i,j,k,l}`.
#[allow(clippy::too_many_arguments)]
pub fn k3d_element(a: u32, b: u32, c: u32, d: u32, i: u32, j: u32, k: u32, l: u32) -> ExactScalar {
    ExactScalar::from_poly(k3d_poly([a, b, c, d, i, j, k, l]))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ElementKind {
    R3D,
    K3D,
}

/// A matrix element with out-indices first, then in-indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element3D {
    pub kind: ElementKind,
    pub indices: Vec<u32>,
    pub value: ExactScalar,
}

impl Element3D {
    /// Evaluates `R̂` for 6 indices or `𝒦` for 8.
    pub fn evaluate(kind: ElementKind, indices: &[u32]) -> Option<Element3D> {
        let value = match kind {
            ElementKind::R3D => ExactScalar::from_poly(r3d_poly(indices.try_into().ok()?)),
            ElementKind::K3D => ExactScalar::from_poly(k3d_poly(indices.try_into().ok()?)),
        };
        Some(Element3D { kind, indices: indices.to_vec(), value })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "indices": self.indices,
            "value": self.value.to_string(),
        })
    }
}

impl fmt::Display for Element3D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            ElementKind::R3D => "R",
            ElementKind::K3D => "K",
        };
        let h = self.indices.len() / 2;
        let join = |xs: &[u32]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}^{{{}}}_{{{}}} = {}", name, join(&self.indices[..h]), join(&self.indices[h..]), self.value)
    }
}

/// `L^{γ,δ}_{α,β}` as a word in `A±, K`; the zero word when `α+β ≠ γ+δ`.
pub fn local_l(alpha: u8, beta: u8, gamma: u8, delta: u8) -> OperatorWord {
    let alg = Algebra::Doubled;
    let one = |g: Generator| OperatorWord::letter(alg, g);
    match (alpha, beta, gamma, delta) {
        (0, 0, 0, 0) | (1, 1, 1, 1) => OperatorWord::identity(alg),
        (0, 1, 0, 1) => one(Generator::KDiag),
        (1, 0, 1, 0) => one(Generator::KDiag).scaled(&ExactScalar::from_int(-1)),
        (0, 1, 1, 0) => one(Generator::Raise),
        (1, 0, 0, 1) => one(Generator::Lower),
        _ => OperatorWord::zero(alg),
    }
}

/// `K^β_α` as a word in `a±, k`.
pub fn local_k(alpha: u8, beta: u8) -> OperatorWord {
    let alg = Algebra::Single;
    let one = |g: Generator| OperatorWord::letter(alg, g);
    match (alpha, beta) {
        (0, 0) => one(Generator::Raise),
        (1, 0) => one(Generator::KDiag).scaled(&ExactScalar::from_int(-1)),
        (0, 1) => one(Generator::KDiag),
        (1, 1) => one(Generator::Lower),
        _ => OperatorWord::zero(alg),
    }
}

/// Image of `|m>` under a word whose coefficients are Laurent polynomials; `None` when it vanishes.
pub fn word_on_basis(w: &OperatorWord, m: u32) -> Option<(u32, Poly)> {
    let b = w.algebra.beta();
    let mut m = m;
    let mut c = w.scale.to_laurent().expect("word scale must be a Laurent polynomial");
    if c.is_zero() {
        return None;
    }
    for g in w.letters.iter().rev() {
        match g {
            Generator::Raise => m += 1,
            Generator::Lower => {
                if m == 0 {
                    return None;
                }
                c = c.mul(&Poly::one().sub(&q_pow(2 * b as i64 * m as i64)));
                m -= 1;
            }
            Generator::KDiag => c = c.mul(&Poly::var_pow(Var::Q, b * (2 * m as i32 + 1))),
            Generator::HPower(u) => {
                let p = u.pow(m as i32).to_ratfun().to_laurent().expect("monomial with integral coefficient");
                c = c.mul(&p);
            }
        }
    }
    Some((m, c))
}

/// Finitely supported vector over a tensor product of `V = C²` and Fock spaces,
/// keyed by the basis label of every tensor slot.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisTensor {
    pub amps: BTreeMap<Vec<u32>, Poly>,
}

impl BasisTensor {
    pub fn basis(key: &[u32]) -> Self {
        let mut t = BasisTensor::default();
        t.add(key.to_vec(), Poly::one());
        t
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn add(&mut self, key: Vec<u32>, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.amps.get_mut(&key) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.amps.remove(&key);
                }
            }
            None => {
                self.amps.insert(key, c);
            }
        }
    }

    pub fn add_tensor(&mut self, o: &BasisTensor) {
        for (k, c) in &o.amps {
            self.add(k.clone(), c.clone());
        }
    }

    pub fn sub_tensor(&mut self, o: &BasisTensor) {
        for (k, c) in &o.amps {
            self.add(k.clone(), c.neg());
        }
    }

    pub fn scale(&self, c: &Poly) -> BasisTensor {
        let mut out = BasisTensor::default();
        for (k, v) in &self.amps {
            out.add(k.clone(), v.mul(c));
        }
        out
    }

    /// Keeps the components whose labels on `slots` sum to at most `n`.
    pub fn restrict_degree(&self, slots: &[usize], n: u32) -> BasisTensor {
        let amps =
            self.amps.iter().filter(|(k, _)| slots.iter().map(|&s| k[s]).sum::<u32>() <= n).map(|(k, v)| (k.clone(), v.clone())).collect();
        BasisTensor { amps }
    }

    fn map_terms(&self, mut f: impl FnMut(&[u32], &Poly, &mut BasisTensor)) -> BasisTensor {
        let mut out = BasisTensor::default();
        for (k, v) in &self.amps {
            f(k, v, &mut out);
        }
        out
    }

    /// Applies a one-site word.
    pub fn apply_word(&self, site: usize, w: &OperatorWord) -> BasisTensor {
        self.map_terms(|k, v, out| {
            if let Some((m, c)) = word_on_basis(w, k[site]) {
                let mut key = k.to_vec();
                key[site] = m;
                out.add(key, v.mul(&c));
            }
        })
    }

    /// `L` acting on `V_{aux[0]} ⊗ V_{aux[1]} ⊗ F_{site}` (with `F = F_{q²}`).
    pub fn apply_local_l(&self, aux: [usize; 2], site: usize) -> BasisTensor {
        self.map_terms(|k, v, out| {
            let (al, be) = (k[aux[0]] as u8, k[aux[1]] as u8);
            for (ga, de) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
                if al + be != ga + de {
                    continue;
                }
                if let Some((m, c)) = word_on_basis(&local_l(al, be, ga, de), k[site]) {
                    let mut key = k.to_vec();
                    key[aux[0]] = ga as u32;
                    key[aux[1]] = de as u32;
                    key[site] = m;
                    out.add(key, v.mul(&c));
                }
            }
        })
    }

    /// `K` acting on `V_aux ⊗ F_site` (with `F = F_q`).
    pub fn apply_local_k(&self, aux: usize, site: usize) -> BasisTensor {
        self.map_terms(|k, v, out| {
            let al = k[aux] as u8;
            for be in 0..2u8 {
                if let Some((m, c)) = word_on_basis(&local_k(al, be), k[site]) {
                    let mut key = k.to_vec();
                    key[aux] = be as u32;
                    key[site] = m;
                    out.add(key, v.mul(&c));
                }
            }
        })
    }

    /// `R̂` on three Fock slots, or `𝓡 = R̂|_{q→q²}` when `doubled`.
    pub fn apply_r3d(&self, sites: [usize; 3], doubled: bool) -> BasisTensor {
        self.map_terms(|k, v, out| {
            let (i, j, kk) = (k[sites[0]], k[sites[1]], k[sites[2]]);
            for b in 0..=(i + j).min(j + kk) {
                let (a, c) = (i + j - b, j + kk - b);
                let mut e = r3d_poly([a, b, c, i, j, kk]);
                if e.is_zero() {
                    continue;
                }
                if doubled {
                    e = double_q(&e);
                }
                let mut key = k.to_vec();
                key[sites[0]] = a;
                key[sites[1]] = b;
                key[sites[2]] = c;
                out.add(key, v.mul(&e));
            }
        })
    }

    /// `𝒦` on four Fock slots `F_{q²} ⊗ F_q ⊗ F_{q²} ⊗ F_q`.
    pub fn apply_k3d(&self, sites: [usize; 4]) -> BasisTensor {
        self.map_terms(|key, v, out| {
            let [i, j, k, l] = sites.map(|s| key[s]);
            let s = i + j + k;
            let t = j + 2 * k + l;
            for c in 0..=s.min(t / 2) {
                for b in 0..=(s - c).min(t - 2 * c) {
                    let (a, d) = (s - b - c, t - b - 2 * c);
                    let e = k3d_poly([a, b, c, d, i, j, k, l]);
                    if e.is_zero() {
                        continue;
                    }
                    let mut nk = key.to_vec();
                    nk[sites[0]] = a;
                    nk[sites[1]] = b;
                    nk[sites[2]] = c;
                    nk[sites[3]] = d;
                    out.add(nk, v.mul(&e));
                }
            }
        })
    }
}

/// `R̂` on a three-slot tensor, keeping outputs of total degree at most `n`.
pub fn r3d_apply(state: &BasisTensor, n: u32) -> BasisTensor {
    state.apply_r3d([0, 1, 2], false).restrict_degree(&[0, 1, 2], n)
}

/// `𝒦` on a four-slot tensor, keeping outputs of total degree at most `n`.
pub fn k3d_apply(state: &BasisTensor, n: u32) -> BasisTensor {
    state.apply_k3d([0, 1, 2, 3]).restrict_degree(&[0, 1, 2, 3], n)
}

/// Whether every term of `p` is `q^e` with `e ≡ parity (mod 2)` in whole powers of `q`.
pub fn has_q_parity(p: &Poly, parity: u32) -> bool {
    p.terms().iter().all(|(e, _)| e[0].rem_euclid(4) == 2 * parity as i32 && e[1..].iter().all(|&x| x == 0))
}

/// `ξ ≡ (a−j)(c−j) mod 2`.
pub fn r3d_parity([a, _b, c, _i, j, _k]: [u32; 6]) -> u32 {
    (((a as i64 - j as i64) * (c as i64 - j as i64)).rem_euclid(2)) as u32
}

/// `η ≡ bd + jl mod 2`.
pub fn k3d_parity([_a, b, _c, d, _i, j, _k, l]: [u32; 8]) -> u32 {
    (b * d + j * l) % 2
}

/// Integer-coefficient view used in tests and goldens.
pub fn integer_coefficients(p: &Poly) -> Option<Vec<(i32, num_bigint::BigInt)>> {
    p.terms().iter().map(|(e, c)| if c.is_real() && e[0] % 2 == 0 { Some((e[0] / 2, c.re.clone())) } else { None }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn p(s: &str) -> ExactScalar {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn multinomial_examples() {
        assert!(multinomial_symbol(&[1], &[1]).is_one());
        assert_eq!(multinomial_symbol(&[2], &[1, 1]), p("1 + q^2"));
        assert!(multinomial_symbol(&[1], &[-1, 2]).is_zero());
    }

    #[test]
    fn r3d_listed_values() {
        assert_eq!(r3d_element(1, 3, 0, 3, 1, 2), p("-q^2*(1-q^4)*(1-q^6)"));
        assert_eq!(r3d_element(2, 2, 1, 3, 1, 2), p("(1+q^2)*(1-q^6)*(1-q^2-q^6)"));
        assert_eq!(r3d_element(4, 0, 3, 3, 1, 2), p("q^6"));
        assert_eq!(r3d_element(3, 1, 2, 3, 1, 2), p("-q^2*(-1-q^2+q^6+q^8+q^10)"));
        assert!(r3d_element(0, 0, 0, 0, 0, 0).is_one());
        let nonzero = (0..=3).filter(|&b| !r3d_poly([4 - b, b, 3 - b, 3, 1, 2]).is_zero()).count();
        assert_eq!(nonzero, 4);
    }

    #[test]
    fn k3d_listed_values() {
        let cases = [
            ([0, 2, 1, 0], "q^5*(1+q^2)*(1-q^2-q^6)"),
            ([0, 3, 0, 1], "-q^2*(1-q^6)*(1-q^2-q^4-q^6-q^8)"),
            ([1, 0, 2, 0], "-q*(1+q^2)*(1+q^4)*(1-q^4+q^10)"),
            ([1, 1, 1, 1], "(1-q^4-q^8)*(1-q^2-q^4+q^8+q^10)"),
            ([1, 2, 0, 2], "-q^5*(1+q^2)*(1-q^4)*(2-q^2+q^4-2*q^6-q^10)"),
            ([2, 0, 1, 2], "q*(1+q^2)*(1-q^8)*(1-q^4-q^8+q^10+q^14)"),
            ([2, 1, 0, 3], "q^2*(1+q^2)*(1+q^4)*(1-q^6)^2*(1-q^2-q^8)"),
            ([3, 0, 0, 4], "q^5*(1+q^2)*(1+q^4)*(1-q^6)*(1-q^8)*(1-q^12)"),
        ];
        for ([i, j, k, l], want) in cases {
            assert_eq!(k3d_element(1, 1, 1, 1, i, j, k, l), p(want), "K^1111_{i}{j}{k}{l}");
        }
        assert!(k3d_element(0, 0, 0, 0, 0, 0, 0, 0).is_one());
    }

    #[test]
    fn k3d_listed_values_are_complete() {
        let mut count = 0;
        for i in 0..=3 {
            for j in 0..=(3 - i) {
                let k = 3 - i - j;
                // b+2c+d = 4 = j + 2k + l
                let l = 4 - j as i64 - 2 * k as i64;
                if l >= 0 && !k3d_poly([1, 1, 1, 1, i, j, k, l as u32]).is_zero() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 8);
    }

    #[test]
    fn local_tables() {
        assert_eq!(local_l(0, 1, 1, 0).letters, vec![Generator::Raise]);
        assert!(local_l(0, 0, 1, 1).is_zero());
        let k01 = local_k(0, 1);
        assert_eq!(k01.letters, vec![Generator::KDiag]);
        assert!(k01.scale.is_one());
        assert_eq!(local_k(1, 0).scale, ExactScalar::from_int(-1));
    }

    #[test]
    fn vacuum_fixed() {
        let v = BasisTensor::basis(&[0, 0, 0]);
        assert_eq!(r3d_apply(&v, 0), v);
        let v = BasisTensor::basis(&[0, 0, 0, 0]);
        assert_eq!(k3d_apply(&v, 0), v);
    }
}
