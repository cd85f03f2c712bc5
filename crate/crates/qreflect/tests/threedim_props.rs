use proptest::prelude::*;
use qreflect::threedim::*;

fn all_r_in(max: u32) -> Vec<[u32; 3]> {
    let mut v = Vec::new();
    for i in 0..=max {
        for j in 0..=max - i {
            for k in 0..=max - i - j {
                v.push([i, j, k]);
            }
        }
    }
    v
}

#[test]
fn r3d_is_an_involution() {
    for [i, j, k] in all_r_in(4) {
        let v = BasisTensor::basis(&[i, j, k]);
        let twice = v.apply_r3d([0, 1, 2], false).apply_r3d([0, 1, 2], false);
        assert_eq!(twice, v, "R^2 on |{i},{j},{k}>");
    }
}

#[test]
fn k3d_is_an_involution() {
    for [i, j, k] in all_r_in(3) {
        for l in 0..=4 {
            let v = BasisTensor::basis(&[i, j, k, l]);
            let twice = v.apply_k3d([0, 1, 2, 3]).apply_k3d([0, 1, 2, 3]);
            assert_eq!(twice, v, "K^2 on |{i},{j},{k},{l}>");
        }
    }
}

#[test]
fn parity_of_all_small_elements() {
    for [i, j, k] in all_r_in(6) {
        for b in 0..=(i + j).min(j + k) {
            let idx = [i + j - b, b, j + k - b, i, j, k];
            let p = r3d_poly(idx);
            if !p.is_zero() {
                assert!(has_q_parity(&p, r3d_parity(idx)), "R{idx:?}");
            }
        }
    }
    for [i, j, k] in all_r_in(4) {
        for l in 0..=(6 - i - j - k).min(4) {
            let (s, t) = (i + j + k, j + 2 * k + l);
            for c in 0..=s.min(t / 2) {
                for b in 0..=(s - c).min(t - 2 * c) {
                    let idx = [s - b - c, b, c, t - b - 2 * c, i, j, k, l];
                    let p = k3d_poly(idx);
                    if !p.is_zero() {
                        assert!(has_q_parity(&p, k3d_parity(idx)), "K{idx:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn r3d_apply_respects_degree_bound() {
    let v = BasisTensor::basis(&[2, 1, 1]);
    assert!(r3d_apply(&v, 3).is_zero() || r3d_apply(&v, 3).amps.keys().all(|k| k.iter().sum::<u32>() <= 3));
    assert_eq!(r3d_apply(&v, 4), v.apply_r3d([0, 1, 2], false).restrict_degree(&[0, 1, 2], 4));
}

proptest! {
    #[test]
    fn r3d_deltas(idx in prop::array::uniform6(0u32..5)) {
        let [a, b, c, i, j, k] = idx;
        if a + b != i + j || b + c != j + k {
            prop_assert!(r3d_poly(idx).is_zero());
        }
    }

    #[test]
    fn k3d_deltas(idx in prop::array::uniform8(0u32..4)) {
        let [a, b, c, d, i, j, k, l] = idx;
        if a + b + c != i + j + k || b + 2 * c + d != j + 2 * k + l {
            prop_assert!(k3d_poly(idx).is_zero());
        }
    }

    // x^{h1} (xy)^{h2} y^{h3} and (x/y)^{h1} x^{h2} (xy)^{h3} y^{h4} take the same value on both index tuples
    #[test]
    fn weight_conservation(idx in prop::array::uniform3(0u32..5), l in 0u32..4) {
        let [i, j, k] = idx;
        let w_r = |a: u32, b: u32, c: u32| (a + b, b + c);
        for (key, _) in BasisTensor::basis(&[i, j, k]).apply_r3d([0, 1, 2], false).amps {
            prop_assert_eq!(w_r(key[0], key[1], key[2]), w_r(i, j, k));
        }
        let w_k = |a: u32, b: u32, c: u32, d: u32| (a + b + c, c as i64 + d as i64 - a as i64);
        for (key, _) in BasisTensor::basis(&[i, j, k, l]).apply_k3d([0, 1, 2, 3]).amps {
            prop_assert_eq!(w_k(key[0], key[1], key[2], key[3]), w_k(i, j, k, l));
        }
    }
}
