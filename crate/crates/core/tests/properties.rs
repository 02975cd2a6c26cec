mod common;

use lie2kit::crossmod::{crossed_product, ideal_crossed_module, split_crossed_product};
use lie2kit::graded::{MultiTensor, Target};
use lie2kit::lie2core::{check_lie2, GradedSubspace};
use lie2kit::ratlin::{format_rational, kernel_basis, parse_rational, qf, rank, unit_vec, QVec, RationalMatrix};
use lie2kit::repcoh::{check_action, coboundary, cohomology, Lie2Module};
use lie2kit::workspace::Workspace;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> RationalMatrix {
    RationalMatrix::from_vec(rows, cols, entries.iter().map(|&e| qf(e, 1)).collect()).expect("length")
}

fn arb_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |e| matrix(r, c, &e))
    })
}

fn pair_strategy() -> impl Strategy<Value = (String, Lie2Module)> {
    let n = common::base_pairs().len();
    (0..n, any::<u64>()).prop_map(|(i, seed)| {
        let (name, m) = common::base_pairs().swap_remove(i);
        (name, common::transported(&m, seed))
    })
}

#[test]
fn generated_pairs_are_valid() {
    let pairs = common::generated_pairs();
    assert!(pairs.len() >= 20);
    for (name, m) in &pairs {
        let (a, b) = m.algebra.dims();
        assert!(a <= 3 && b <= 3 && m.v0() <= 3 && m.v1() <= 3, "{name}: dims");
        assert!(check_lie2(&m.algebra).passed(), "{name}: algebra");
        let v = check_action(m);
        assert!(v.passed(), "{name}: {v}");
    }
}

#[test]
fn coboundary_squares_to_zero_on_generated_pairs() {
    for (name, m) in common::generated_pairs() {
        for n in -1..=3 {
            let d = coboundary(&m, n + 1).unwrap().mul(&coboundary(&m, n).unwrap());
            assert!(d.is_zero(), "{name}: D² ≠ 0 in degree {n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn coboundary_squares_to_zero_after_transport((name, m) in pair_strategy()) {
        for n in -1..=3 {
            let d = coboundary(&m, n + 1).unwrap().mul(&coboundary(&m, n).unwrap());
            prop_assert!(d.is_zero(), "{}: degree {}", name, n);
        }
    }

    #[test]
    fn betti_numbers_are_transport_invariant(i in 0usize..30, seed in any::<u64>()) {
        let pairs = common::base_pairs();
        let (name, m) = &pairs[i % pairs.len()];
        let t = common::transported(m, seed);
        for n in 0..=2 {
            prop_assert_eq!(cohomology(m, n).unwrap().betti, cohomology(&t, n).unwrap().betti, "{} H^{}", name, n);
        }
    }

    #[test]
    fn transported_algebras_stay_valid((name, m) in pair_strategy()) {
        let v = check_lie2(&m.algebra);
        prop_assert!(v.passed(), "{}: {}", name, v);
        let a = check_action(&m);
        prop_assert!(a.passed(), "{}: {}", name, a);
    }

    #[test]
    fn workspace_round_trip_is_bit_identical((name, m) in pair_strategy()) {
        let mut ws = Workspace::default();
        let n = ws.put_module("m", &m);
        let text = ws.to_json();
        let back = Workspace::parse(&text).unwrap();
        prop_assert_eq!(back.to_json(), text, "{}", name);
        prop_assert_eq!(back.module(&n).unwrap(), m);
    }

    #[test]
    fn crossed_product_splits_back((name, m) in pair_strategy(), pick in 0usize..4) {
        let g = m.algebra;
        let (n0, n1) = g.dims();
        let h = match pick {
            0 => GradedSubspace::full(&g),
            1 => GradedSubspace::zero(&g),
            _ => {
                // the image of d plus all of g₁ is an ideal
                let d = g.space.diff.clone();
                let im: Vec<QVec> = (0..n1).map(|j| d.column(j)).collect();
                GradedSubspace::span(n0, &im, n1, &(0..n1).map(|j| unit_vec(n1, j)).collect::<Vec<_>>())
            }
        };
        let cm = ideal_crossed_module(&g, &h).unwrap();
        let p = crossed_product(&cm.g, &cm.m, &cm.action).unwrap();
        prop_assert!(check_lie2(&p).passed(), "{}", name);
        let (t0, t1) = p.dims();
        let u0: Vec<QVec> = (0..t0).map(|i| unit_vec(t0, i)).collect();
        let u1: Vec<QVec> = (0..t1).map(|i| unit_vec(t1, i)).collect();
        let s = split_crossed_product(&p, (&u0[..n0], &u1[..n1]), (&u0[n0..], &u1[n1..])).unwrap();
        prop_assert_eq!(&s.action, &cm.action);
        prop_assert_eq!(&s.g, &cm.g);
        prop_assert_eq!(&s.m, &cm.m);
    }

    #[test]
    fn rank_nullity(m in arb_matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == qf(0, 1)));
        }
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), n in 1usize..=4) {
        let p = common::random_invertible(n, &mut common::rng(seed));
        let i = p.inverse().unwrap();
        prop_assert_eq!(p.mul(&i), RationalMatrix::identity(n));
        prop_assert_eq!(i.mul(&p), RationalMatrix::identity(n));
    }

    #[test]
    fn rationals_print_and_parse(n in -1000i64..1000, d in 1i64..1000) {
        let r = qf(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn antisymmetric_tensor_changes_sign(entries in prop::collection::vec(-3i64..=3, 9)) {
        let mut t = MultiTensor::zero(2, 0, 3, 0, Target::V0, 3);
        for (c, (x, y)) in [(0usize, 1usize), (0, 2), (1, 2)].into_iter().enumerate() {
            t.add_basis(&[x, y], &[], &entries[3 * c..3 * c + 3].iter().map(|&e| qf(e, 1)).collect::<Vec<_>>());
        }
        for x in 0..3 {
            for y in 0..3 {
                let a = t.eval_basis(&[x, y], &[]);
                let b = t.eval_basis(&[y, x], &[]);
                prop_assert!(a.iter().zip(&b).all(|(u, v)| *u == -v.clone()));
            }
        }
    }
}

#[test]
fn fixture_files_round_trip_bit_identically() {
    for path in common::fixture_files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let ws = Workspace::parse(&text).unwrap();
        assert_eq!(ws.to_json(), text, "{}", path.display());
    }
}
