#![allow(dead_code)]

use proptest::prelude::*;
use qreflect::qboson::{apply_truncated, boundary_vector, Algebra, BoundaryKind, Generator, OperatorWord, TruncatedState};
use qreflect::scalar::{series_oracle_half, ExactScalar, GaussianRational, MonomialArg, Poly, Var};
use qreflect::threedim::word_on_basis;

pub fn z_samples() -> Vec<GaussianRational> {
    vec![GaussianRational::from_frac(1, 2), GaussianRational::from_int(2), GaussianRational::from_int(-3)]
}

/// Replaces `z` by `c·q` and expands in powers of `q^(1/2)`.
pub fn expand_at(s: &ExactScalar, c: &GaussianRational, half_degree: usize) -> Vec<GaussianRational> {
    let s = s.subst(Var::Z, MonomialArg::q(1).with_coeff(c.clone())).unwrap();
    series_oracle_half(&s, half_degree, &[]).unwrap()
}

pub fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::Raise),
        Just(Generator::Lower),
        Just(Generator::KDiag),
        (1..3i32).prop_map(|k| Generator::HPower(MonomialArg::q(k))),
        Just(Generator::HPower(MonomialArg::q(1).with_coeff(GaussianRational::from_int(-1)))),
    ]
}

pub fn word(alg: Algebra, max_len: usize) -> impl Strategy<Value = OperatorWord> {
    prop::collection::vec(generator(), 0..=max_len).prop_map(move |ls| OperatorWord::new(alg, ls))
}

/// `Σ_{m ≤ n} z^m <m|w|m>/<m|m>`.
pub fn truncated_trace(w: &OperatorWord, n: u64) -> ExactScalar {
    let z = MonomialArg::var(Var::Z);
    let mut acc = ExactScalar::zero();
    for m in 0..=n {
        let v = apply_truncated(w, &TruncatedState::basis(w.algebra, m)).unwrap();
        acc = acc.try_add(&v.amp(m).mul_monomial(&z.pow(m as i32))).unwrap();
    }
    acc
}

/// `<v_k| z^h w |v_k'>` from boundary vectors truncated at level `n`, keeping only levels `≤ n - len(w)`.
pub fn truncated_boundary(w: &OperatorWord, k: u8, kp: u8, n: u64) -> ExactScalar {
    let kind = match w.algebra {
        Algebra::Single => BoundaryKind::Eta,
        Algebra::Doubled => BoundaryKind::Chi,
    };
    let ket = apply_truncated(w, &boundary_vector(kind, kp, n).unwrap()).unwrap();
    let bra = boundary_vector(kind, k, n).unwrap();
    let keep = n.saturating_sub(w.letters.len() as u64);
    let z = MonomialArg::var(Var::Z);
    let mut acc = ExactScalar::zero();
    for (m, a) in &ket.amps {
        if *m > keep {
            continue;
        }
        let t = a.mul(&bra.amp(*m)).mul(&TruncatedState::norm_sq(w.algebra, *m)).mul_monomial(&z.pow(*m as i32));
        acc = acc.try_add(&t).unwrap();
    }
    acc
}

/// Power series in `q^(1/2)`, truncated to a fixed length.
pub type Series = Vec<GaussianRational>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let len = a.len();
    let mut out = vec![GaussianRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().take(len - i).enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// A polynomial in `q^(1/2)` alone, as a series.
fn poly_series(p: &Poly, len: usize) -> Series {
    let mut out = vec![GaussianRational::zero(); len];
    for (e, c) in p.terms() {
        assert!(e.iter().skip(1).all(|&x| x == 0), "oracle coefficients must depend on q only");
        assert!(e[0] >= 0, "negative power of q in an oracle coefficient");
        if (e[0] as usize) < len {
            out[e[0] as usize] = &out[e[0] as usize] + &GaussianRational::from_gint(c);
        }
    }
    out
}

/// `1 / Π_{i=1}^{m} (1 - q^{step·i/2})`.
fn inv_poch_series(step: usize, m: u64, len: usize) -> Series {
    let mut out = vec![GaussianRational::zero(); len];
    out[0] = GaussianRational::one();
    for i in 1..=m as usize {
        let e = step * i;
        for d in e..len {
            out[d] = &out[d] + &out[d - e];
        }
    }
    out
}

fn pow_series(c: &GaussianRational, m: u64, len: usize) -> Series {
    // (c q)^m
    let mut out = vec![GaussianRational::zero(); len];
    if 2 * (m as usize) < len {
        out[2 * m as usize] = c.pow(m as i32).unwrap();
    }
    out
}

/// `Σ_m z^m <m|w|m>/<m|m>` at `z = c·q`, to `q^(1/2)`-degree `half_degree`.
pub fn oracle_trace_series(w: &OperatorWord, c: &GaussianRational, half_degree: usize) -> Series {
    let len = half_degree + 1;
    let mut acc = vec![GaussianRational::zero(); len];
    for m in 0..=(half_degree / 2) as u32 {
        if let Some((t, p)) = word_on_basis(w, m) {
            if t == m {
                let s = series_mul(&pow_series(c, m as u64, len), &poly_series(&p, len));
                acc = acc.iter().zip(&s).map(|(a, b)| a + b).collect();
            }
        }
    }
    acc
}

/// `<v_k| z^h w |v_k'>` at `z = c·q` from level-by-level series, to `q^(1/2)`-degree `half_degree`.
pub fn oracle_boundary_series(w: &OperatorWord, k: u8, kp: u8, c: &GaussianRational, half_degree: usize) -> Series {
    let len = half_degree + 1;
    let beta = w.algebra.beta() as usize;
    let max_out = (half_degree / 2) as u32;
    let max_in = max_out + w.letters.len() as u32;
    let mut acc = vec![GaussianRational::zero(); len];
    for m in (0..=max_in).filter(|m| m % kp as u32 == 0) {
        let Some((t, p)) = word_on_basis(w, m) else { continue };
        if t > max_out || t % k as u32 != 0 {
            continue;
        }
        let norm = TruncatedState::norm_sq(w.algebra, t as u64).to_laurent().unwrap();
        let mut s = series_mul(&poly_series(&p.mul(&norm), len), &pow_series(c, t as u64, len));
        s = series_mul(&s, &inv_poch_series(2 * beta * (kp as usize).pow(2), (m / kp as u32) as u64, len));
        s = series_mul(&s, &inv_poch_series(2 * beta * (k as usize).pow(2), (t / k as u32) as u64, len));
        acc = acc.iter().zip(&s).map(|(a, b)| a + b).collect();
    }
    acc
}
