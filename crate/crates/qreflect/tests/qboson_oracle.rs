mod common;

use common::*;
use proptest::prelude::*;
use qreflect::qboson::*;
use qreflect::scalar::{parse_scalar, MonomialArg, Var};

const DEG: usize = 12;

fn check_trace(w: &OperatorWord, deg: usize) {
    let exact = trace_eval(w, &MonomialArg::var(Var::Z)).unwrap();
    let trunc = truncated_trace(w, deg as u64 + 1);
    for c in z_samples() {
        assert_eq!(expand_at(&exact, &c, 2 * deg), expand_at(&trunc, &c, 2 * deg), "word {:?}", w.letters);
    }
}

fn check_boundary(w: &OperatorWord, k: u8, kp: u8, deg: usize) {
    let exact = boundary_eval(w, k, kp, &MonomialArg::var(Var::Z)).unwrap();
    let trunc = truncated_boundary(w, k, kp, (deg + w.letters.len() + 1) as u64);
    for c in z_samples() {
        assert_eq!(expand_at(&exact, &c, 2 * deg), expand_at(&trunc, &c, 2 * deg), "word {:?} ({k},{kp})", w.letters);
    }
}

#[test]
fn trace_examples() {
    let alg = Algebra::Doubled;
    let w = OperatorWord::new(alg, vec![Generator::Raise, Generator::Lower]);
    let exact = trace_eval(&w, &MonomialArg::var(Var::Z)).unwrap();
    assert_eq!(exact, parse_scalar("z*(1-q^4)/((1-z)*(1-q^4*z))").unwrap());
    check_trace(&w, 30);
    check_trace(&OperatorWord::new(alg, vec![Generator::KDiag]), 30);
}

#[test]
fn boundary_examples_at_degree_thirty() {
    let w = OperatorWord::new(Algebra::Single, vec![Generator::Lower, Generator::KDiag, Generator::Raise, Generator::Raise]);
    for (k, kp) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        check_boundary(&w, k, kp, 30);
    }
}

#[test]
fn k_power_boundary_is_reciprocal_of_normalizer() {
    // <η_1| z^h k^2 |η_1> = q (-q^3 z; q)_inf / (q^2 z; q)_inf
    let w = OperatorWord::new(Algebra::Single, vec![Generator::KDiag, Generator::KDiag]);
    let got = boundary_eval(&w, 1, 1, &MonomialArg::var(Var::Z)).unwrap();
    assert_eq!(got, parse_scalar("q * (-q^3*z; q)_inf / (q^2*z; q)_inf").unwrap());
}

#[test]
fn bad_index_rejected() {
    let w = OperatorWord::identity(Algebra::Single);
    assert_eq!(boundary_eval(&w, 3, 1, &MonomialArg::one()), Err(BosonError::BadBoundaryIndex(3)));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn normal_order_is_sound(w in word(Algebra::Single, 6), dbl in any::<bool>()) {
        let w = if dbl { w.in_algebra(Algebra::Doubled) } else { w };
        let nf = normal_order(&w).unwrap();
        for m in 0..=8 {
            let v = TruncatedState::basis(w.algebra, m);
            prop_assert_eq!(apply_truncated(&w, &v).unwrap(), apply_normal_form(&nf, &v).unwrap());
        }
    }

    #[test]
    fn trace_matches_truncated_sum(w in word(Algebra::Single, 4), dbl in any::<bool>()) {
        let w = if dbl { w.in_algebra(Algebra::Doubled) } else { w };
        check_trace(&w, DEG);
    }

    #[test]
    fn boundary_matches_truncated_sum(w in word(Algebra::Single, 4), k in 1u8..=2, kp in 1u8..=2, dbl in any::<bool>()) {
        let w = if dbl { w.in_algebra(Algebra::Doubled) } else { w };
        check_boundary(&w, k, kp, DEG);
    }

    #[test]
    fn transpose_symmetry(w in word(Algebra::Single, 4), k in 1u8..=2, kp in 1u8..=2) {
        let z = MonomialArg::var(Var::Z);
        let lhs = boundary_eval(&w, k, kp, &z).unwrap();
        let mut t = w.reverse_bar();
        t.letters.push(Generator::HPower(z));
        let rhs = boundary_eval(&t, kp, k, &MonomialArg::one()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
