use qreflect::matprod::*;
use qreflect::scalar::{ExactScalar, Var};
use qreflect::verify::*;

fn s(a: u8, b: u8) -> Family {
    Family::SBoundary { s: a, sp: b }
}

fn k(a: u8, b: u8) -> Family {
    Family::KBoundary { k: a, kp: b }
}

#[test]
fn ybe_small() {
    for fam in [Family::STrace, s(1, 1), s(1, 2), s(2, 1), s(2, 2)] {
        let c = check_ybe(fam, 1).unwrap();
        assert!(c.passed(), "{}", c);
        assert_eq!(c.checked, 8);
    }
}

#[test]
fn re_small() {
    for (sf, kf) in admissible_pairs() {
        let c = check_re(sf, kf, 1).unwrap();
        assert!(c.passed(), "{}", c);
        let d = re_certificate(&build(1, sf).unwrap(), &build(1, kf).unwrap(), ReDomain::Diagonal).unwrap();
        assert!(d.passed(), "{}", d);
    }
}

#[test]
fn inadmissible_pairs_are_rejected() {
    assert!(matches!(check_re(s(2, 2), k(1, 1), 1), Err(VerifyError::InadmissiblePair { .. })));
    assert!(matches!(check_re(Family::STrace, k(1, 1), 1), Err(VerifyError::InadmissiblePair { .. })));
    assert!(matches!(check_re(s(2, 1), k(1, 2), 1), Err(VerifyError::InadmissiblePair { .. })));
    assert!(admissible(s(1, 2), k(2, 2)));
}

#[test]
fn perturbed_entries_fail_with_witness() {
    let m = build(1, s(1, 1)).unwrap();
    let v = Basis::parse("0,1").unwrap();
    let bad = perturbed(&m, v, v, &ExactScalar::var(Var::Z)).unwrap();
    let c = ybe_certificate(&bad).unwrap();
    assert!(!c.passed());
    assert!(c.witness.as_deref().unwrap().contains("input"));

    let kk = build(1, k(2, 2)).unwrap();
    let e = Basis::parse("1").unwrap();
    let bad = perturbed(&kk, e, e, &ExactScalar::from_int(1)).unwrap();
    let c = re_certificate(&m, &bad, ReDomain::Generic).unwrap();
    assert!(!c.passed() && c.witness.is_some());
}

#[test]
fn certificate_json_shape() {
    let c = check_ybe(s(1, 1), 1).unwrap();
    let js = c.to_json();
    assert_eq!(js["identity"], "ybe");
    assert_eq!(js["status"], "pass");
    assert_eq!(js["params"]["family"], "S^{1,1}");
    assert!(js.get("witness").is_none());
    assert!(js["seconds"].is_number());
    assert!(c.to_json_untimed().get("seconds").is_none());
}

#[test]
fn quantized_re_low_degree() {
    let c = check_quantized_re(0, Some(&["0000"]));
    assert!(c.passed(), "{}", c);
    assert_eq!(c.checked, 1);
    let c = check_quantized_re(2, None);
    assert!(c.passed(), "{}", c);
    assert_eq!(c.params["components"].as_object().unwrap().len(), 16);
}

#[test]
fn rlll_low_degree() {
    let c = check_rlll(2);
    assert!(c.passed(), "{}", c);
    assert_eq!(c.params["components"], 64);
}

#[test]
fn r3d_relations_low_degree() {
    let c = check_r3d_relations(3);
    assert!(c.passed(), "{}", c);
}

#[test]
fn boundary_eigen_low_degree() {
    for kind in [
        EigenKind::R { s: 1 },
        EigenKind::R { s: 2 },
        EigenKind::K { s: 1, k: 1 },
        EigenKind::K { s: 1, k: 2 },
        EigenKind::K { s: 2, k: 2 },
    ] {
        let c = check_boundary_eigen(kind, 4).unwrap();
        assert!(c.passed(), "{}", c);
    }
    assert!(check_boundary_eigen(EigenKind::K { s: 2, k: 1 }, 2).is_err());
}

#[test]
fn spot_checks() {
    let c = check_tetra_spot(&[(vec![0; 6], Some(vec![0; 6])), (vec![1, 0, 2, 1, 0, 1], None), (vec![0, 1, 1, 2, 0, 0], None)]).unwrap();
    assert!(c.passed(), "{}", c);
    let c =
        check_3dre_spot(&[(vec![0; 9], None), (vec![1, 0, 1, 0, 1, 0, 0, 1, 0], None), (vec![0, 1, 0, 1, 0, 0, 1, 0, 1], None)]).unwrap();
    assert!(c.passed(), "{}", c);
    assert!(check_tetra_spot(&[(vec![0; 5], None)]).is_err());
}

#[test]
fn fock_tuple_counts() {
    assert_eq!(fock_tuples(3, 5).len(), 56);
    assert_eq!(fock_tuples(4, 2).len(), 15);
}

#[test]
fn involutions() {
    let c = check_involution(4, 3, 4);
    assert!(c.passed(), "{}", c);
    assert_eq!(c.checked, 35 + 20 * 5);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn tuple(len: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0..=max, len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn tetrahedron_on_random_tuples(t in tuple(6, 2)) {
            prop_assert!(check_tetra_spot(&[(t, None)]).unwrap().passed());
        }

        #[test]
        fn reflection_3d_on_random_tuples(t in tuple(9, 1)) {
            prop_assert!(check_3dre_spot(&[(t, None)]).unwrap().passed());
        }

        #[test]
        fn any_perturbation_breaks_ybe(row in 0u32..4, col in 0u32..4, c in 1i64..4) {
            let m = build(1, s(1, 2)).unwrap();
            let b = |i: u32| Basis::Pair(BitString::new(1, i >> 1), BitString::new(1, i & 1));
            let bad = perturbed(&m, b(row), b(col), &ExactScalar::var(Var::Z).mul(&ExactScalar::from_int(c))).unwrap();
            prop_assert!(!ybe_certificate(&bad).unwrap().passed());
        }
    }
}
