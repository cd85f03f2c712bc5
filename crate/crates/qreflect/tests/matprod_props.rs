mod common;

use std::collections::BTreeSet;

use common::*;
use qreflect::matprod::*;
use qreflect::qboson::{boundary_eval, trace_eval, OperatorWord};
use qreflect::scalar::{parse_scalar, ExactScalar, MonomialArg, Var};

const BOUNDARY: [(u8, u8); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

fn sc(s: &str) -> ExactScalar {
    parse_scalar(s).unwrap()
}

fn sign(e: usize) -> ExactScalar {
    if e.is_multiple_of(2) {
        ExactScalar::one()
    } else {
        ExactScalar::from_int(-1)
    }
}

#[test]
fn selection_rules_up_to_four_sites() {
    for n in 1..=4 {
        let s = build_s_trace_full(n).unwrap();
        for (r, c) in s.entries.keys() {
            let ((g, d), (a, b)) = (r.pair(), c.pair());
            for j in 1..=n {
                assert_eq!(a.bit(j) + b.bit(j), g.bit(j) + d.bit(j));
            }
            assert_eq!((a.weight(), b.weight()), (g.weight(), d.weight()));
        }
        for (k, kp) in BOUNDARY {
            let kb = build_k_boundary(n, k, kp).unwrap();
            if (k, kp) == (2, 2) {
                for (r, c) in kb.entries.keys() {
                    assert_eq!((r.single().weight() + c.single().weight()) % 2, n % 2);
                }
            }
        }
        let kt = build_k_trace(n).unwrap();
        for (r, c) in kt.entries.keys() {
            assert_eq!(r.single().weight() + c.single().weight(), n);
        }
    }
    for n in 1..=3 {
        let s = build_s_boundary(n, 2, 2).unwrap();
        for (r, c) in s.entries.keys() {
            let ((g, d), (a, b)) = (r.pair(), c.pair());
            assert_eq!((Parity::of(&a), Parity::of(&b)), (Parity::of(&g), Parity::of(&d)));
        }
    }
}

#[test]
fn s_normalization_anchors() {
    for n in 1..=4 {
        let s = build_s_trace_full(n).unwrap();
        for l in 0..=n {
            for m in 0..=n {
                let v = Basis::Pair(BitString::leading_ones(n, l), BitString::leading_ones(n, m));
                assert_eq!(s.column(&v), vec![(v, sign(l.saturating_sub(m)))], "n={n} l={l} m={m}");
            }
        }
    }
    let e1 = |n| BitString::unit(n, 1);
    let zero = BitString::zero;
    for n in 1..=3 {
        for (s, sp) in BOUNDARY {
            let m = build_s_boundary(n, s, sp).unwrap();
            let v = Basis::Pair(zero(n), zero(n));
            assert_eq!(m.column(&v), vec![(v, ExactScalar::one())]);
            if (s, sp) == (2, 2) {
                let v = Basis::Pair(e1(n), e1(n));
                assert_eq!(m.column(&v), vec![(v, ExactScalar::one())]);
                let v = Basis::Pair(zero(n), e1(n));
                assert_eq!(m.column(&v), vec![(v, ExactScalar::one())]);
                let v = Basis::Pair(e1(n), zero(n));
                assert_eq!(m.column(&v), vec![(v, ExactScalar::from_int(-1))]);
            }
        }
    }
}

#[test]
fn k_normalization_anchors() {
    for n in 1..=4 {
        let kt = build_k_trace(n).unwrap();
        let kb: Vec<QMatrix> = BOUNDARY.iter().map(|&(k, kp)| build_k_boundary(n, k, kp).unwrap()).collect();
        for l in 0..=n {
            let src = Basis::Single(BitString::leading_ones(n, l));
            let dst = Basis::Single(BitString::trailing_ones(n, l));
            assert!(kt.get(&dst, &src).is_one(), "K^tr n={n} l={l}");
            for m in &kb {
                assert_eq!(m.get(&dst, &src), sign(l), "{} n={n} l={l}", m.family);
            }
        }
    }
}

#[test]
fn block_decomposition_counts() {
    let s = build_s_trace_full(2).unwrap();
    let blocks = block_decompose(&s).unwrap();
    assert_eq!(blocks.len(), 9);
    assert!(blocks.iter().all(|b| !b.is_empty()));
    assert_eq!(blocks.iter().map(|b| b.len()).sum::<usize>(), s.len());
    let b11 = &blocks[4];
    assert_eq!(b11.block, Block::Weights(1, 1));
    assert_eq!(b11.entries, build_s_trace(2, 1, 1).unwrap().entries);

    let s22 = build_s_boundary(2, 2, 2).unwrap();
    let blocks = block_decompose(&s22).unwrap();
    assert_eq!(blocks.len(), 4);
    assert!(blocks.iter().all(|b| !b.is_empty()));

    let k22 = build_k_boundary(1, 2, 2).unwrap();
    let blocks = block_decompose(&k22).unwrap();
    assert_eq!(blocks.iter().map(|b| b.block).collect::<Vec<_>>(), vec![Block::Parity(Parity::Even), Block::Parity(Parity::Odd)]);
    assert_eq!(blocks[0].len(), 1);

    assert_eq!(block_decompose(&build_k_trace(3).unwrap()).unwrap().len(), 4);
}

#[test]
fn cross_block_entry_is_reported() {
    let mut s = build_s_trace(2, 1, 1).unwrap();
    let a = Basis::Pair(BitString::parse("01").unwrap(), BitString::parse("10").unwrap());
    let b = Basis::Pair(BitString::parse("11").unwrap(), BitString::parse("00").unwrap());
    s.insert(b, a, ExactScalar::one());
    assert!(matches!(block_decompose(&s), Err(MatprodError::CrossBlockEntry { .. })));
}

#[test]
fn reversal_symmetries() {
    for n in 1..=3 {
        let r = symmetry_check(&build_s_trace_full(n).unwrap()).unwrap();
        assert!(r.applicable && r.passed() && r.checked > 0, "S^tr n={n}: {:?}", r.mismatches);
        for (a, b) in BOUNDARY {
            let r = symmetry_check(&build_s_boundary(n, a, b).unwrap()).unwrap();
            assert!(r.passed(), "S^{{{a},{b}}} n={n}: {:?}", r.mismatches);
            let r = symmetry_check(&build_k_boundary(n, a, b).unwrap()).unwrap();
            assert!(r.passed(), "K^{{{a},{b}}} n={n}: {:?}", r.mismatches);
        }
    }
    assert!(!symmetry_check(&build_k_trace(2).unwrap()).unwrap().applicable);
}

#[test]
fn symmetry_detects_a_broken_entry() {
    let mut s = build_s_trace(2, 1, 1).unwrap();
    let a = Basis::Pair(BitString::parse("01").unwrap(), BitString::parse("10").unwrap());
    s.insert(a, a, sc("z"));
    assert!(!symmetry_check(&s).unwrap().passed());
}

#[test]
fn closed_form_min_weight() {
    for n in 1..=4 {
        for m in 1..=n {
            let c = closed_form_s_tr_min1(n, m, MinSide::M1).unwrap();
            assert_eq!(c.entries, build_s_trace(n, m, 1).unwrap().entries, "S^tr_{{{m},1}} n={n}");
            let c = closed_form_s_tr_min1(n, m, MinSide::OneM).unwrap();
            assert_eq!(c.entries, build_s_trace(n, 1, m).unwrap().entries, "S^tr_{{1,{m}}} n={n}");
        }
    }
    let c = closed_form_s_tr_min1(3, 2, MinSide::M1).unwrap();
    let v = Basis::Pair(BitString::parse("110").unwrap(), BitString::unit(3, 3));
    assert_eq!(c.get(&v, &v), sc("q^2*(1-q^2*z)/(1-q^6*z)"));
    let v = Basis::Pair(BitString::parse("110").unwrap(), BitString::unit(3, 1));
    assert_eq!(c.get(&v, &v), ExactScalar::from_int(-1));
}

#[test]
fn spec_examples() {
    let b = |s: &str| Basis::Single(BitString::parse(s).unwrap());
    let p = |s: &str| Basis::parse(s).unwrap();
    let kt = build_k_trace(2).unwrap();
    assert!(kt.get(&b("01"), &b("00")).is_zero());
    let s12 = build_s_boundary(1, 1, 2).unwrap();
    assert_eq!(s12.get(&p("0,1"), &p("1,0")), sc("(1+q^2)*z/(1+q^2*z^2)"));
    let s11 = build_s_boundary(2, 1, 1).unwrap();
    assert_eq!(s11.get(&p("11,00"), &p("00,11")), sc("(1+q^2)*(1+q^4)*z^2/((1+q^2*z)*(1+q^4*z))"));
    let k22 = build_k_boundary(2, 2, 2).unwrap();
    assert_eq!(k22.column(&b("01")), vec![(b("01"), sc("q^(-1)*(-1+q^2)*z^2/(-1+z^2)")), (b("10"), ExactScalar::from_int(-1))]);
}

#[test]
fn json_and_text_output() {
    let m = build_s_boundary(1, 1, 1).unwrap();
    let js = m.to_json();
    assert_eq!(js["basis_order"], "big-endian bits");
    assert_eq!(js["family"], "S^{1,1}");
    assert_eq!(QMatrix::from_json(&js).unwrap(), m);
    let text = m.pretty();
    assert!(text.lines().next().unwrap().starts_with("|0,0⟩ ↦ |0,0⟩"));
    assert_eq!(text.lines().count(), 4);
}

/// Distinct words behind the entries of every family at `n` sites.
fn words(n: usize) -> (BTreeSet<String>, Vec<OperatorWord>, Vec<OperatorWord>) {
    let mut seen = BTreeSet::new();
    let mut doubled = Vec::new();
    let mut single = Vec::new();
    for a in BitString::all(n) {
        for b in BitString::all(n) {
            for (g, d) in pair_outputs(&a, &b) {
                let w = l_word(&a, &b, &g, &d).unwrap();
                if seen.insert(format!("D{:?}{}", w.letters, w.scale)) {
                    doubled.push(w);
                }
            }
            let w = k_word(&a, &b).unwrap();
            if seen.insert(format!("S{:?}{}", w.letters, w.scale)) {
                single.push(w);
            }
        }
    }
    (seen, doubled, single)
}

#[test]
fn entries_agree_with_truncated_fock_sums() {
    let deg: usize = std::env::var("QREFLECT_ORACLE_DEGREE").ok().and_then(|s| s.parse().ok()).unwrap_or(12);
    let z = MonomialArg::var(Var::Z);
    for n in 1..=3 {
        let (_, doubled, single) = words(n);
        for w in doubled.iter().chain(single.iter()) {
            let exact = trace_eval(w, &z).unwrap();
            for c in z_samples() {
                assert_eq!(expand_at(&exact, &c, 2 * deg), oracle_trace_series(w, &c, 2 * deg), "{:?}", w.letters);
            }
            for (k, kp) in BOUNDARY {
                let exact = boundary_eval(w, k, kp, &z).unwrap();
                for c in z_samples() {
                    assert_eq!(expand_at(&exact, &c, 2 * deg), oracle_boundary_series(w, k, kp, &c, 2 * deg), "{:?} ({k},{kp})", w.letters);
                }
            }
        }
    }
}

#[test]
fn series_oracle_matches_exact_truncation() {
    // the level-by-level series oracle against the exact truncated sums at low degree
    let (_, doubled, single) = words(2);
    for w in doubled.iter().chain(single.iter()).take(12) {
        for c in z_samples() {
            assert_eq!(expand_at(&truncated_trace(w, 5), &c, 10), oracle_trace_series(w, &c, 10));
            for (k, kp) in BOUNDARY {
                let t = truncated_boundary(w, k, kp, (5 + w.letters.len() + 1) as u64);
                assert_eq!(expand_at(&t, &c, 10), oracle_boundary_series(w, k, kp, &c, 10));
            }
        }
    }
}
