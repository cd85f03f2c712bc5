use qreflect::matprod::*;
use qreflect::scalar::{ExactScalar, GInt, Poly, Var};
use qreflect::uqrep::*;
use qreflect::verify::VerifyError;

fn spec(kind: AlgebraType, n: usize) -> AlgebraSpec {
    AlgebraSpec::new(kind, n).unwrap()
}

#[test]
fn generator_examples() {
    let a = spec(AlgebraType::A, 2);
    let f1 = rep_generator(&a, Chevalley::F, 1, Var::Z).unwrap();
    assert!(f1.get(0b10, 0b01).is_one());
    assert_eq!(f1.entries.len(), 1);

    let d2 = spec(AlgebraType::D2, 2);
    let e0 = rep_generator(&d2, Chevalley::E, 0, Var::Z).unwrap();
    assert_eq!(e0.get(0b10, 0b00), Poly::var_pow(Var::Z, 1));
    assert_eq!(e0.get(0b11, 0b01), Poly::var_pow(Var::Z, 1));
    assert_eq!(e0.entries.len(), 2);

    let b = spec(AlgebraType::B, 2);
    let k0 = rep_generator(&b, Chevalley::K, 0, Var::Z).unwrap();
    assert_eq!(k0.get(0, 0), b.p_pow(-2));
    assert_eq!(k0.get(0, 0), Poly::monomial([4, 0, 0, 0, 0], GInt::real(-1)));
    assert!(rep_generator(&b, Chevalley::E, 3, Var::Z).is_err());
}

#[test]
fn cartan_relations_hold() {
    for kind in AlgebraType::ALL {
        for n in 1..=4 {
            let Ok(s) = AlgebraSpec::new(kind, n) else { continue };
            for sign in [1, -1] {
                let s = s.with_sign(sign);
                assert!(check_cartan_relations(&s).is_empty(), "{kind} n={n}: {:?}", check_cartan_relations(&s));
            }
        }
    }
}

#[test]
fn d1_preserves_parity() {
    let s = spec(AlgebraType::D1, 3);
    for j in s.nodes() {
        for g in Chevalley::ALL {
            for (r, c) in rep_generator(&s, g, j, Var::Z).unwrap().entries.keys() {
                assert_eq!(r.count_ones() % 2, c.count_ones() % 2);
            }
        }
    }
}

#[test]
fn coproduct_shapes() {
    let s = spec(AlgebraType::D2, 1);
    let k = coproduct_action(&s, Chevalley::K, 0, Var::X, Var::Y, false).unwrap();
    let k1 = rep_generator(&s, Chevalley::K, 0, Var::X).unwrap();
    for ((r, c), p) in &k {
        assert_eq!(r, c);
        assert_eq!(*p, k1.get(r.0, r.0).mul(&k1.get(r.1, r.1)));
    }
    let e = coproduct_action(&s, Chevalley::E, 0, Var::X, Var::Y, false).unwrap();
    assert_eq!(e.keys().filter(|(_, c)| *c == (0, 0)).count(), 2);
    let opp = coproduct_action(&s, Chevalley::E, 0, Var::X, Var::Y, true).unwrap();
    let swapped: PairMatrix = coproduct_action(&s, Chevalley::E, 0, Var::Y, Var::X, false)
        .unwrap()
        .into_iter()
        .map(|(((a, b), (c, d)), p)| (((b, a), (d, c)), p))
        .collect();
    assert_eq!(opp, swapped);
}

#[test]
fn gauge_inverse() {
    for a in 0..16u32 {
        assert!(
            GInt::one() == {
                let g = gauge(1, a);
                let h = gauge(-1, a);
                let p = Poly::constant(g).mul(&Poly::constant(h));
                p.constant_value().unwrap()
            }
        );
    }
}

#[test]
fn intertwiner_table_rows() {
    let a = spec(AlgebraType::A, 2);
    for l in 0..=2 {
        for m in 0..=2 {
            let c = check_intertwiner(&a, &build_s_trace(2, l, m).unwrap()).unwrap();
            assert!(c.passed(), "{c}");
        }
    }
    for (kind, n) in [(AlgebraType::D2, 1), (AlgebraType::D2, 2), (AlgebraType::B, 2), (AlgebraType::Btilde, 2)] {
        for sign in [1, -1] {
            let s = spec(kind, n).with_sign(sign);
            let c = check_intertwiner(&s, &build(n, kind.family()).unwrap()).unwrap();
            assert!(c.passed(), "{c}");
        }
    }
    let d1 = spec(AlgebraType::D1, 2);
    let full = build_s_boundary(2, 2, 2).unwrap();
    for b in block_decompose(&full).unwrap() {
        let c = check_intertwiner(&d1, &b).unwrap();
        assert!(c.passed(), "{c}");
    }
}

#[test]
fn intertwiner_rejects_wrong_family_and_broken_entries() {
    let d2 = spec(AlgebraType::D2, 1);
    let err = check_intertwiner(&d2, &build_s_boundary(1, 2, 2).unwrap()).unwrap_err();
    assert!(matches!(err, VerifyError::BadParameter(ref m) if m.contains("not the R matrix")));

    let mut s = build_s_boundary(1, 1, 1).unwrap();
    let v = Basis::parse("0,1").unwrap();
    s.insert(v, v, s.get(&v, &v).mul(&ExactScalar::var(Var::Z)));
    let c = check_intertwiner(&d2, &s).unwrap();
    assert!(!c.passed() && c.witness.is_some());
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn gauge_signs_are_inverse(a in 0u32..(1 << 12)) {
            prop_assert_eq!(Poly::constant(gauge(1, a)).mul(&Poly::constant(gauge(-1, a))), Poly::one());
        }

        #[test]
        fn k_is_diagonal_and_invertible(kind in prop::sample::select(AlgebraType::ALL.to_vec()), n in 2usize..5, j in 0usize..6) {
            let s = spec(kind, n);
            prop_assume!(s.nodes().contains(&j));
            let k = rep_generator(&s, Chevalley::K, j, Var::Z).unwrap();
            let ki = rep_generator(&s, Chevalley::KInv, j, Var::Z).unwrap();
            prop_assert_eq!(k.entries.len(), 1 << n);
            for ((r, c), p) in &k.entries {
                prop_assert_eq!(r, c);
                prop_assert!(p.mul(&ki.get(*r, *r)).is_one());
            }
        }
    }
}
