use super::exact::ExactScalar;
use super::gauss::GaussianRational;
use super::poch::MonomialArg;
use super::poly::{Poly, NVARS};
use super::{ScalarError, Var};

type Series = Vec<GaussianRational>;

/// First `degree + 1` coefficients of the expansion of `s` in `var`, after
/// sampling the other variables at the given points.
///
/// Infinite Pochhammer symbols are expanded as products truncated at `degree`,
/// which requires `var = q`. Odd half powers of `q` are rejected; see
/// [`series_oracle_half`].
pub fn series_oracle(s: &ExactScalar, var: Var, degree: usize, samples: &[(Var, GaussianRational)]) -> Result<Series, ScalarError> {
    oracle(s, var, degree, samples, if var == Var::Q { 2 } else { 1 })
}

/// Like [`series_oracle`] in `q`, but the coefficients are indexed by powers of `q^(1/2)`.
pub fn series_oracle_half(s: &ExactScalar, degree: usize, samples: &[(Var, GaussianRational)]) -> Result<Series, ScalarError> {
    oracle(s, Var::Q, degree, samples, 1)
}

fn oracle(s: &ExactScalar, var: Var, degree: usize, samples: &[(Var, GaussianRational)], unit: i32) -> Result<Series, ScalarError> {
    let bindings: Vec<(Var, MonomialArg)> =
        samples.iter().filter(|(v, _)| *v != var).map(|(v, c)| (*v, MonomialArg::one().with_coeff(c.clone()))).collect();
    if var != Var::Q && !s.is_rational() {
        return Err(ScalarError::NonMonomialSubstitutionIntoSymbol);
    }
    let s = if bindings.is_empty() { s.clone() } else { s.substitute(&bindings)? };
    let vi = var as usize;
    for k in 0..NVARS {
        if k == vi {
            continue;
        }
        let used = s.rat().num().uses_var(k) || s.rat().den().uses_var(k) || s.symbols().iter().any(|p| p.arg.exps[k] != 0);
        if used {
            return Err(ScalarError::UnsampledVariable(super::Var::ALL[k].name()));
        }
    }
    let num = poly_series(s.rat().num(), vi, unit, degree)?;
    let den = poly_series(s.rat().den(), vi, unit, degree)?;
    let mut acc = series_div(&num, &den)?;
    for sym in s.symbols() {
        let e = sym.arg.exps[vi];
        let g = 2 * sym.step as i32;
        if e % unit != 0 || g % unit != 0 {
            return Err(ScalarError::HalfIntegerPower);
        }
        if e <= 0 {
            return Err(ScalarError::PoleAtOrigin);
        }
        let (e, g) = ((e / unit) as usize, (g / unit) as usize);
        let mut prod = unit_series(degree);
        let mut p = e;
        while p <= degree {
            let mut f = unit_series(degree);
            f[p] = -&sym.arg.coeff;
            prod = series_mul(&prod, &f);
            p += g;
        }
        let factor = if sym.exponent >= 0 { prod } else { series_div(&unit_series(degree), &prod)? };
        for _ in 0..sym.exponent.unsigned_abs() {
            acc = series_mul(&acc, &factor);
        }
    }
    Ok(acc)
}

fn unit_series(degree: usize) -> Series {
    let mut v = vec![GaussianRational::zero(); degree + 1];
    v[0] = GaussianRational::one();
    v
}

fn poly_series(p: &Poly, vi: usize, unit: i32, degree: usize) -> Result<Series, ScalarError> {
    let mut v = vec![GaussianRational::zero(); degree + 1];
    for (e, c) in p.terms() {
        let x = e[vi];
        if x % unit != 0 {
            return Err(ScalarError::HalfIntegerPower);
        }
        let x = x / unit;
        if x < 0 {
            return Err(ScalarError::PoleAtOrigin);
        }
        if (x as usize) <= degree {
            v[x as usize] = &v[x as usize] + &GaussianRational::from_gint(c);
        }
    }
    Ok(v)
}

fn series_mul(a: &Series, b: &Series) -> Series {
    let n = a.len();
    let mut out = vec![GaussianRational::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            if !b[j].is_zero() {
                out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
            }
        }
    }
    out
}

fn series_div(a: &Series, b: &Series) -> Result<Series, ScalarError> {
    let inv0 = b[0].inv().ok_or(ScalarError::PoleAtOrigin)?;
    let n = a.len();
    let mut out = vec![GaussianRational::zero(); n];
    for k in 0..n {
        let mut acc = a[k].clone();
        for j in 1..=k {
            if !b[j].is_zero() {
                acc = &acc - &(&b[j] * &out[k - j]);
            }
        }
        out[k] = &acc * &inv0;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Series {
        v.iter().map(|&x| GaussianRational::from_int(x)).collect()
    }

    #[test]
    fn geometric_series() {
        let s = ExactScalar::one().try_div(&(&ExactScalar::one() - &ExactScalar::q(1))).unwrap();
        assert_eq!(series_oracle(&s, Var::Q, 3, &[]).unwrap(), ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn euler_function_matches_brute_force() {
        let s = ExactScalar::poch_inf(MonomialArg::q(1), 1, 1).unwrap();
        let got = series_oracle(&s, Var::Q, 5, &[]).unwrap();
        // brute force product of (1 - q^k), k = 1..5
        let mut coeffs = vec![0i64; 6];
        coeffs[0] = 1;
        for k in 1..=5 {
            for d in (k..=5).rev() {
                coeffs[d] -= coeffs[d - k];
            }
        }
        assert_eq!(got, ints(&coeffs));
        assert_eq!(got, ints(&[1, -1, -1, 0, 0, 1]));
    }

    #[test]
    fn sampled_variable() {
        let z = ExactScalar::var(Var::Z);
        let s = ExactScalar::q(1).try_div(&(&ExactScalar::one() - &z.mul(&ExactScalar::q(2)))).unwrap();
        let got = series_oracle(&s, Var::Q, 4, &[(Var::Z, GaussianRational::one())]).unwrap();
        assert_eq!(got, ints(&[0, 1, 0, 1, 0]));
    }

    #[test]
    fn pole_at_origin() {
        let s = ExactScalar::one().try_div(&ExactScalar::q(1)).unwrap();
        assert_eq!(series_oracle(&s, Var::Q, 3, &[]), Err(ScalarError::PoleAtOrigin));
    }
}
