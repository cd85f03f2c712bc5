//! Multivariate gcd over ℤ[i].
//!
//! Strategy: strip monomial and integer content, try trial division, deflate
//! exponents, then a heuristic evaluation/interpolation gcd, and finally a
//! primitive pseudo-remainder sequence which always succeeds.

use num_bigint::BigInt;

use super::gauss::GInt;
use super::poly::{Exps, Poly, NVARS, ONE_EXPS};

/// Unit-normalized gcd of two polynomials with nonnegative exponents.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.unit_normalized().0;
    }
    if b.is_zero() {
        return a.unit_normalized().0;
    }
    let ma = a.min_exps();
    let mb = b.min_exps();
    let mut m = ONE_EXPS;
    let mut na = ONE_EXPS;
    let mut nb = ONE_EXPS;
    for k in 0..NVARS {
        m[k] = ma[k].min(mb[k]);
        na[k] = -ma[k];
        nb[k] = -mb[k];
    }
    let a1 = a.shift(&na);
    let b1 = b.shift(&nb);
    let ca = a1.content();
    let cb = b1.content();
    let c = ca.gcd(&cb);
    let a2 = a1.div_scalar_exact(&ca).expect("content divides");
    let b2 = b1.div_scalar_exact(&cb).expect("content divides");
    let g = gcd_primitive(&a2, &b2);
    g.mul_monomial(&m, &c).unit_normalized().0
}

fn vars_of(p: &Poly) -> [bool; NVARS] {
    let mx = p.max_exps();
    let mut v = [false; NVARS];
    for k in 0..NVARS {
        v[k] = mx[k] > 0;
    }
    v
}

fn primitive(p: &Poly) -> Poly {
    let c = p.content();
    p.div_scalar_exact(&c).expect("content divides").unit_normalized().0
}

/// Gcd of polynomials without monomial factors and with unit integer content.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let an = a.unit_normalized().0;
    let bn = b.unit_normalized().0;
    if an == bn {
        return an;
    }
    let (small, big) = if an.len() <= bn.len() { (&an, &bn) } else { (&bn, &an) };
    if big.try_div(small).is_some() {
        return small.clone();
    }

    let va = vars_of(a);
    let vb = vars_of(b);
    for k in 0..NVARS {
        if va[k] != vb[k] {
            // the gcd cannot involve a variable missing from one side
            let (with, without) = if va[k] { (a, b) } else { (b, a) };
            let mut g = without.clone();
            for c in with.coeffs_in(k) {
                if c.is_zero() {
                    continue;
                }
                g = gcd(&g, &c);
                if g.is_constant() {
                    return Poly::one();
                }
            }
            return primitive(&g);
        }
    }

    if let Some(g) = deflated_gcd(a, b) {
        return g;
    }
    if let Some(g) = heu_gcd(a, b, 0) {
        return primitive(&g);
    }
    prs_gcd(a, b)
}

fn exponent_gcds(a: &Poly, b: &Poly) -> [i32; NVARS] {
    let mut d = [0i32; NVARS];
    for p in [a, b] {
        for (e, _) in p.terms() {
            for k in 0..NVARS {
                d[k] = num_integer::gcd(d[k], e[k]);
            }
        }
    }
    d
}

fn deflated_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let d = exponent_gcds(a, b);
    if d.iter().all(|&x| x <= 1) {
        return None;
    }
    let defl = |e: &Exps| {
        let mut r = *e;
        for k in 0..NVARS {
            if d[k] > 1 {
                r[k] /= d[k];
            }
        }
        r
    };
    let infl = |e: &Exps| {
        let mut r = *e;
        for k in 0..NVARS {
            if d[k] > 1 {
                r[k] *= d[k];
            }
        }
        r
    };
    let g = gcd_primitive(&a.map_exps(defl), &b.map_exps(defl));
    Some(g.map_exps(infl).unit_normalized().0)
}

fn interpolate(h: &Poly, x: &BigInt, v: usize) -> Poly {
    let mut h = h.clone();
    let mut out: Vec<(Exps, GInt)> = Vec::new();
    let mut i = 0;
    while !h.is_zero() {
        let g: Vec<(Exps, GInt)> = h.terms().iter().map(|(e, c)| (*e, c.symmetric_mod(x))).filter(|(_, c)| !c.is_zero()).collect();
        let gp = Poly::from_terms(g.clone());
        for (e, c) in g {
            let mut ne = e;
            ne[v] = i;
            out.push((ne, c));
        }
        h = h.sub(&gp).div_scalar_exact(&GInt::real(x.clone())).expect("exact by construction");
        i += 1;
        if i > 4096 {
            break;
        }
    }
    Poly::from_terms(out)
}

fn heu_gcd(f: &Poly, g: &Poly, depth: usize) -> Option<Poly> {
    if depth > NVARS {
        return None;
    }
    if let (Some(a), Some(b)) = (f.constant_value(), g.constant_value()) {
        return Some(Poly::constant(a.gcd(&b)));
    }
    let vf = vars_of(f);
    let vg = vars_of(g);
    let v = (0..NVARS).rev().find(|&k| vf[k] || vg[k])?;
    let cf = f.content();
    let cg = g.content();
    let c = cf.gcd(&cg);
    let f = f.div_scalar_exact(&cf)?;
    let g = g.div_scalar_exact(&cg)?;
    let bound = f.max_coeff_abs().min(g.max_coeff_abs());
    let mut x: BigInt = bound * 2 + 29;
    for _ in 0..6 {
        let xv = GInt::real(x.clone());
        let ff = f.eval_var(v, &xv);
        let gg = g.eval_var(v, &xv);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heu_gcd(&ff, &gg, depth + 1) {
                let cand = interpolate(&h, &x, v);
                if !cand.is_zero() {
                    let cand = primitive(&cand);
                    if f.try_div(&cand).is_some() && g.try_div(&cand).is_some() {
                        return Some(cand.scale(&c));
                    }
                }
            }
        }
        let r = x.sqrt().sqrt();
        x = &x * 73794 * r / 27011;
    }
    None
}

fn lc_in(p: &Poly, v: usize) -> (i32, Poly) {
    let d = p.degree_in(v);
    let terms = p
        .terms()
        .iter()
        .filter(|(e, _)| e[v] == d)
        .map(|(e, c)| {
            let mut ne = *e;
            ne[v] = 0;
            (ne, c.clone())
        })
        .collect::<Vec<_>>();
    (d, Poly::from_terms(terms))
}

fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn pp_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    p.try_div(&c).expect("content divides")
}

fn prs_gcd(a: &Poly, b: &Poly) -> Poly {
    let va = vars_of(a);
    let (da, db) = (a.max_exps(), b.max_exps());
    let v = (0..NVARS).filter(|&k| va[k]).min_by_key(|&k| da[k].max(db[k])).expect("non-constant inputs");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let gc = gcd(&ca, &cb);
    let mut p = a.try_div(&ca).expect("content divides");
    let mut r = b.try_div(&cb).expect("content divides");
    if p.degree_in(v) < r.degree_in(v) {
        std::mem::swap(&mut p, &mut r);
    }
    loop {
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            p = Poly::one();
            break;
        }
        let rem = prem(&p, &r, v);
        p = r;
        r = if rem.is_zero() { rem } else { pp_in(&rem, v) };
    }
    let g = pp_in(&p, v);
    primitive(&g.mul(&gc))
}

fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let (db, lcb) = lc_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let (dr, lcr) = lc_in(&r, v);
        let mut shift = ONE_EXPS;
        shift[v] = dr - db;
        r = r.mul(&lcb).sub(&lcr.shift(&shift).mul(b));
    }
    r
}

#[cfg(test)]
pub(crate) fn gcd_prs_only(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return gcd(a, b);
    }
    let ca = a.content();
    let cb = b.content();
    let a2 = a.div_scalar_exact(&ca).unwrap();
    let b2 = b.div_scalar_exact(&cb).unwrap();
    if a2.is_constant() || b2.is_constant() {
        return Poly::constant(ca.gcd(&cb));
    }
    prs_gcd(&a2, &b2).scale(&ca.gcd(&cb)).unit_normalized().0
}
