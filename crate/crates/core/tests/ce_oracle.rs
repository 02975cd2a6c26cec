//! Betti numbers in the classical case `g₁ = 0`, `V₁ = 0` against an
//! independent Chevalley–Eilenberg implementation.

mod common;

use common::ce::{self, LieAlg, Rep};
use lie2kit::fixtures::{aff1, heis, plain_space, sl2};
use lie2kit::lie2core::Lie2Algebra;
use lie2kit::repcoh::{adjoint_module, cohomology, Lie2Module};

fn oracle_algebra(g: &Lie2Algebra) -> LieAlg {
    let n = g.n0();
    let mut c = vec![vec![vec![ce::int(0); n]; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, out) in row.iter_mut().enumerate() {
            if i != j {
                *out = g.l2_00.eval_basis(&[i, j], &[]);
            }
        }
    }
    LieAlg { n, c }
}

fn oracle_rep(m: &Lie2Module) -> Rep {
    let dim = m.v0();
    let rho = m
        .act00
        .iter()
        .map(|a| (0..dim).map(|r| (0..dim).map(|c| a.get(r, c).clone()).collect()).collect())
        .collect();
    Rep { dim, rho }
}

fn library_betti(m: &Lie2Module, k: usize) -> usize {
    cohomology(m, k as i64).expect("cohomology").betti
}

#[test]
fn oracle_differential_squares_to_zero() {
    for g in [ce::sl2(), ce::aff1(), ce::heis()] {
        for rep in [Rep::trivial(&g, 1), Rep::adjoint(&g)] {
            for k in 0..g.n {
                assert!(ce::squares_to_zero(&g, &rep, k));
            }
        }
    }
}

#[test]
fn oracle_reproduces_classical_values() {
    let g = ce::sl2();
    let t = Rep::trivial(&g, 1);
    let b: Vec<usize> = (0..=3).map(|k| ce::betti(&g, &t, k)).collect();
    assert_eq!(b, [1, 0, 0, 1]);
    let b: Vec<usize> = (0..=3).map(|k| ce::betti(&g, &Rep::adjoint(&g), k)).collect();
    assert_eq!(b, [0, 0, 0, 0]);
    let g = ce::heis();
    let b: Vec<usize> = (0..=3).map(|k| ce::betti(&g, &Rep::trivial(&g, 1), k)).collect();
    assert_eq!(b, [1, 2, 2, 1]);
    let g = ce::aff1();
    let b: Vec<usize> = (0..=2).map(|k| ce::betti(&g, &Rep::trivial(&g, 1), k)).collect();
    assert_eq!(b, [1, 1, 0]);
}

#[test]
fn hand_typed_constants_match_library_fixtures() {
    for (lib, hand) in [(sl2(), ce::sl2()), (aff1(), ce::aff1()), (heis(), ce::heis())] {
        assert_eq!(oracle_algebra(&lib).c, hand.c);
    }
}

#[test]
fn sl2_trivial_coefficients() {
    let m = Lie2Module::trivial(sl2(), plain_space(1, 0));
    let b: Vec<usize> = (0..=3).map(|k| library_betti(&m, k)).collect();
    assert_eq!(b, [1, 0, 0, 1]);
}

#[test]
fn library_matches_oracle_on_classical_modules() {
    let mut cases: Vec<(&str, Lie2Module)> = vec![
        ("aff1 trivial", Lie2Module::trivial(aff1(), plain_space(1, 0))),
        ("aff1 trivial ℚ²", Lie2Module::trivial(aff1(), plain_space(2, 0))),
        ("aff1 adjoint", adjoint_module(&aff1())),
        ("sl2 trivial", Lie2Module::trivial(sl2(), plain_space(1, 0))),
        ("sl2 adjoint", adjoint_module(&sl2())),
        ("heis trivial", Lie2Module::trivial(heis(), plain_space(1, 0))),
        ("heis adjoint", adjoint_module(&heis())),
        ("aff1 weight 1", common::weight_module(&aff1(), plain_space(1, 0), 1)),
        ("aff1 weight -1", common::weight_module(&aff1(), plain_space(2, 0), -1)),
    ];
    let moved: Vec<(&str, Lie2Module)> = cases.iter().enumerate().map(|(i, (_, m))| ("transported", common::transported(m, 40 + i as u64))).collect();
    cases.extend(moved);
    for (name, m) in &cases {
        let (g, rep) = (oracle_algebra(&m.algebra), oracle_rep(m));
        for k in 0..=g.n {
            assert_eq!(library_betti(m, k), ce::betti(&g, &rep, k), "{name}: H^{k}");
        }
    }
}
