use super::*;
use crate::crossmod::{build_from_data, check_crossed_module, check_morphism, CrossedModuleMorphism};
use crate::fixtures::*;
use crate::graded::{GradedMap, TwoTermSpace};
use crate::lie2core::{check_hom, check_lie2, quotient, GradedSubspace, Lie2Algebra, Lie2Hom};
use crate::ratlin::{q, unit_vec, Rational, RationalMatrix};
use crate::repcoh::{adjoint_module, apply_coboundary, cochain_space, cohomologous, Block, Cochain, Lie2Module};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cochain(m: &Lie2Module, n: i64, seed: u64) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flat: Vec<Rational> = (0..cochain_space(m, n).total).map(|_| q(rng.gen_range(-2..=2))).collect();
    Cochain::from_flat(m, n, &flat).unwrap()
}

fn with_block(m: &Lie2Module, n: i64, b: Block, xs: &[usize], as_: &[usize], v: &[Rational]) -> Cochain {
    let mut c = Cochain::zero(m, n);
    c.block_mut(b).unwrap().add_basis(xs, as_, v);
    c
}

/// `ℚ --id--> ℚ` with the ideal `k = (ℚ y, 0)`; `h = (0, ℚ)`.
fn shift_fixture() -> (Lie2Algebra, GradedSubspace, Lie2Module) {
    let g = Lie2Algebra::abelian(identity_space());
    let k = GradedSubspace::span(1, &[unit_vec(1, 0)], 1, &[]);
    let v = Lie2Module::trivial(g.clone(), plain_space(0, 1));
    (g, k, v)
}

/// Heisenberg algebra with `k = span{x₁, x₂}` and trivial `V = (ℚ, ℚ)`.
fn heis_fixture() -> (GradedSubspace, Lie2Module) {
    let g = heis();
    let k = GradedSubspace::span(3, &[unit_vec(3, 1), unit_vec(3, 2)], 0, &[]);
    (k, Lie2Module::trivial(g, plain_space(1, 1)))
}

/// `sl₂ ⊕ ℚz` with `k = ℚz` and trivial `V = (ℚ, ℚ)`.
fn sl2z_fixture() -> (GradedSubspace, Lie2Module) {
    let g = Lie2Algebra::from_lie_algebra(4, &[(1, 0, 0, q(2)), (1, 2, 2, q(-2)), (0, 2, 1, q(1))]);
    let k = GradedSubspace::span(4, &[unit_vec(4, 3)], 0, &[]);
    (k, Lie2Module::trivial(g, plain_space(1, 1)))
}

/// `λ₃ = e*∧h*∧z* + Cartan`, `λ₁ = e*∧f*`.
fn sl2z_lambda(v: &Lie2Module) -> Cochain {
    let mut lam = with_block(v, 2, Block::new(3, 0, 1), &[0, 1, 3], &[], &[q(1)]);
    lam.block_mut(Block::new(3, 0, 1)).unwrap().add_basis(&[0, 1, 2], &[], &[q(2)]);
    lam.block_mut(Block::new(2, 0, 0)).unwrap().add_basis(&[0, 2], &[], &[q(1)]);
    lam
}

/// Skeletal `sl₂` with `g₁ = ℚc ⊕ ℚc'`, `l₃(e,h,f) = c` and `k = (0, ℚc')`.
fn skeletal_sl2_fixture() -> (GradedSubspace, Lie2Module) {
    let mut g = Lie2Algebra::abelian(plain_space(3, 2));
    g.l2_00 = crate::graded::MultiTensor::from_coeffs(2, 0, 3, 2, crate::graded::Target::V0, sl2().l2_00.coeffs().clone()).unwrap();
    g.l3.add_basis(&[0, 1, 2], &[], &[q(1), q(0)]);
    let k = GradedSubspace::span(3, &[], 2, &[unit_vec(2, 1)]);
    (k, Lie2Module::trivial(g, plain_space(1, 1)))
}

/// `sl₂` acting trivially on `V = (ℚ, 0) → I = ℚ --id--> ℚ → Q = (0, ℚ)`.
fn sl2_sequence() -> ModuleSequence {
    let h = sl2();
    ModuleSequence {
        sub: Lie2Module::trivial(h.clone(), plain_space(1, 0)),
        mid: Lie2Module::trivial(h.clone(), identity_space()),
        quot: Lie2Module::trivial(h, plain_space(0, 1)),
        p: GradedMap::new(RationalMatrix::identity(1), RationalMatrix::zeros(1, 0)),
        q: GradedMap::new(RationalMatrix::zeros(0, 1), RationalMatrix::identity(1)),
    }
}

fn cartan(m: &Lie2Module) -> Cochain {
    with_block(m, 2, Block::new(3, 0, 1), &[0, 1, 2], &[], &[q(1)])
}

/// `aff(1)` acting with weight 1 on `V = (ℚ, 0) → I = ℚ --id--> ℚ → Q = (0, ℚ)`.
fn aff1_sequence() -> ModuleSequence {
    let h = aff1();
    let weight = |space: TwoTermSpace| {
        let (v0, v1) = (space.dim(0), space.dim(1));
        let a00 = vec![RationalMatrix::identity(v0), RationalMatrix::zeros(v0, v0)];
        let a01 = vec![RationalMatrix::identity(v1), RationalMatrix::zeros(v1, v1)];
        Lie2Module::new(h.clone(), space, a00, a01, vec![], vec![RationalMatrix::zeros(v1, v0)]).unwrap()
    };
    ModuleSequence {
        sub: weight(plain_space(1, 0)),
        mid: weight(identity_space()),
        quot: weight(plain_space(0, 1)),
        p: GradedMap::new(RationalMatrix::identity(1), RationalMatrix::zeros(1, 0)),
        q: GradedMap::new(RationalMatrix::zeros(0, 1), RationalMatrix::identity(1)),
    }
}

#[test]
fn zero_twist_is_semidirect_and_splits() {
    let m = adjoint_module(&strict_aff1());
    let zero = Cochain::zero(&m, 2);
    let ext = abelian_extension(&m, &zero).unwrap();
    assert!(check_lie2(&ext.algebra).passed());
    assert!(strong_section(&m, &zero).unwrap().is_some());
}

#[test]
fn coboundary_twist_is_isomorphic_to_untwisted() {
    for (seed, m) in [(1, adjoint_module(&strict_aff1())), (2, adjoint_module(&skeletal_sl2()))] {
        let a = random_cochain(&m, 1, seed);
        let da = apply_coboundary(&m, &a);
        let iso = coboundary_isomorphism(&m, &Cochain::zero(&m, 2), &a).unwrap();
        let v = check_hom(&iso);
        assert!(v.passed(), "{v}");
        assert!(strong_section(&m, &da).unwrap().is_some() || !da.get(2, 0, 1).is_zero());
    }
}

#[test]
fn cartan_twist_does_not_split() {
    let seq = sl2_sequence();
    let lam = cartan(&seq.quot);
    let ext = abelian_extension(&seq.quot, &lam).unwrap();
    assert!(check_lie2(&ext.algebra).passed());
    assert!(strong_section(&seq.quot, &lam).unwrap().is_none());
}

#[test]
fn twisted_sum_detects_non_cocycles() {
    let m = adjoint_module(&strict_aff1());
    let mut found = false;
    for seed in 0..20 {
        let lam = random_cochain(&m, 2, seed);
        let ok = apply_coboundary(&m, &lam).is_zero();
        assert_eq!(check_lie2(&twisted_sum(&m, &lam).unwrap()).passed(), ok, "seed {seed}");
        assert_eq!(abelian_extension(&m, &lam).is_ok(), ok);
        found |= !ok;
    }
    assert!(found);
}

#[test]
fn lambda_condition_basics() {
    let (k, v) = heis_fixture();
    let zero = Cochain::zero(&v, 2);
    let c = check_lambda_condition(&v, &k, &zero).unwrap();
    assert!(c.verdict.passed());
    assert!(c.theta.unwrap().is_zero());

    // pulled back from h: θ = D^h μ
    let mu_h = random_cochain(&c.h_module, 2, 7);
    let lam = pull_back(&mu_h, &c.quotient.projection.maps, &v).unwrap();
    let c2 = check_lambda_condition(&v, &k, &lam).unwrap();
    assert!(c2.verdict.passed(), "{}", c2.verdict);
    assert_eq!(c2.theta.unwrap(), apply_coboundary(&c.h_module, &mu_h));

    // a z-leg in λ₁ whose differential keeps it
    let (k, v) = sl2z_fixture();
    let bad = with_block(&v, 2, Block::new(2, 0, 0), &[0, 3], &[], &[q(1)]);
    let c3 = check_lambda_condition(&v, &k, &bad).unwrap();
    assert!(c3.verdict.failed(LAMBDA_CONDITION[0]), "{}", c3.verdict);
    assert!(c3.theta.is_none());
}

#[test]
fn epsilon_lambda_heis_is_non_split() {
    let (k, v) = heis_fixture();
    let lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
    let cm = epsilon_lambda(&v, &k, &lam).unwrap();
    assert!(cm.is_strong());
    assert!(!cm.m.l2_00.is_zero());
    let built = build_from_data(&cm.action.module, &cm.phi, &cm.sigma).unwrap();
    assert_eq!(built.m, cm.m);
    assert_eq!(built.action, cm.action);
}

#[test]
fn epsilon_lambda_zero_is_direct_sum() {
    let (k, v) = heis_fixture();
    let cm = epsilon_lambda(&v, &k, &Cochain::zero(&v, 2)).unwrap();
    assert!(cm.m.l2_00.is_zero() && cm.m.l3.is_zero());
    assert!(check_crossed_module(&cm).unwrap().passed());
}

fn round_trip(v: &Lie2Module, k: &GradedSubspace, lam: &Cochain) {
    let chk = check_lambda_condition(v, k, lam).unwrap();
    let theta = chk.theta.clone().unwrap();
    let cm = epsilon_lambda(v, k, lam).unwrap();
    let m = mu(&cm, None).unwrap();
    assert_eq!(m.sequence.module, chk.h_module);
    let s_lam = pull_back(lam, &m.sections.s, &chk.h_module).unwrap();
    let sum = m.theta.add(&apply_coboundary(&chk.h_module, &s_lam));
    assert_eq!(sum, theta);
    assert!(cohomologous(&chk.h_module, &m.theta, &theta).unwrap());
}

#[test]
fn mu_of_epsilon_lambda_recovers_theta() {
    let (g, k, v) = shift_fixture();
    let lam = with_block(&v, 2, Block::new(1, 1, 1), &[0], &[0], &[q(3)]);
    let chk = check_lambda_condition(&v, &k, &lam).unwrap();
    let theta = chk.theta.clone().unwrap();
    assert!(!theta.is_zero());
    round_trip(&v, &k, &lam);
    let cm = epsilon_lambda(&v, &k, &lam).unwrap();
    assert_ne!(mu(&cm, None).unwrap().class_id, vec![q(0)]);
    let _ = g;

    let (k, v) = heis_fixture();
    let mut lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
    lam.block_mut(Block::new(3, 0, 1)).unwrap().add_basis(&[0, 1, 2], &[], &[q(2)]);
    round_trip(&v, &k, &lam);
}

#[test]
fn gauge_transform_is_a_morphism() {
    let (k, v) = heis_fixture();
    let lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
    let quo = quotient(&v.algebra, &k).unwrap();
    let hm = super::descend_module(&v, &quo).unwrap();
    for seed in 0..4 {
        let a = random_cochain(&v, 1, seed);
        let r = random_cochain(&hm, 2, seed + 100);
        let gt = gauge_transform(&v, &k, &lam, &a, &r).unwrap();
        let verdict = check_morphism(&gt.source, &gt.target, &gt.morphism).unwrap();
        assert!(verdict.passed(), "seed {seed}: {verdict}");
        assert_eq!(gt.inverse.m0.mul(&gt.morphism.f.maps.m0), RationalMatrix::identity(gt.inverse.m0.rows()));
        assert_eq!(mu(&gt.source, None).unwrap().class_id, mu(&gt.target, None).unwrap().class_id);
        let e = elementary_equivalence_check(&gt.source, &gt.target, &gt.morphism).unwrap();
        assert!(e.passed(), "{e}");
    }
    let (g, k, v) = shift_fixture();
    let lam = with_block(&v, 2, Block::new(1, 1, 1), &[0], &[0], &[q(1)]);
    let a = random_cochain(&v, 1, 5);
    let hm = check_lambda_condition(&v, &k, &lam).unwrap().h_module;
    let gt = gauge_transform(&v, &k, &lam, &a, &Cochain::zero(&hm, 2)).unwrap();
    assert!(check_morphism(&gt.source, &gt.target, &gt.morphism).unwrap().passed());
    let _ = g;
}

#[test]
fn trivial_gauge_is_identity() {
    let (k, v) = heis_fixture();
    let lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
    let hm = check_lambda_condition(&v, &k, &lam).unwrap().h_module;
    let gt = gauge_transform(&v, &k, &lam, &Cochain::zero(&v, 1), &Cochain::zero(&hm, 2)).unwrap();
    assert_eq!(gt.morphism.f, Lie2Hom::identity(&gt.target.m));
    assert!(gt.morphism.tau.iter().all(|t| t.is_zero()));
}

#[test]
fn r_only_gauge_keeps_epsilon() {
    let (k, v) = heis_fixture();
    let lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
    let hm = check_lambda_condition(&v, &k, &lam).unwrap().h_module;
    let gt = gauge_transform(&v, &k, &lam, &Cochain::zero(&v, 1), &random_cochain(&hm, 2, 3)).unwrap();
    assert_eq!(gt.source.m, gt.target.m);
    assert_eq!(gt.morphism.f, Lie2Hom::identity(&gt.target.m));
}

#[test]
fn elementary_check_rejects_tau_outside_v() {
    let (k, v) = heis_fixture();
    let lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
    let cm = epsilon_lambda(&v, &k, &lam).unwrap();
    let mor = CrossedModuleMorphism { f: Lie2Hom::identity(&cm.m), g: Lie2Hom::identity(&cm.g), tau: vec![RationalMatrix::zeros(cm.m.n1(), cm.m.n0()); cm.g.n0()] };
    assert!(elementary_equivalence_check(&cm, &cm, &mor).unwrap().passed());
}

#[test]
fn mu_section_independence() {
    let (k, v) = heis_fixture();
    let mut lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
    lam.block_mut(Block::new(3, 0, 1)).unwrap().add_basis(&[0, 1, 2], &[], &[q(1)]);
    let (_, kk, vv) = shift_fixture();
    let lam2 = with_block(&vv, 2, Block::new(1, 1, 1), &[0], &[0], &[q(1)]);
    let seq = sl2_sequence();
    let (zk, zv) = sl2z_fixture();
    let (sk, sv) = skeletal_sl2_fixture();
    let slam = Cochain::zero(&sv, 2);
    for cm in [
        epsilon_lambda(&sv, &sk, &slam).unwrap(),
        epsilon_lambda(&zv, &zk, &sl2z_lambda(&zv)).unwrap(),
        epsilon_lambda(&v, &k, &lam).unwrap(),
        epsilon_lambda(&vv, &kk, &lam2).unwrap(),
        splice(&seq, &cartan(&seq.quot)).unwrap(),
    ] {
        let base = mu(&cm, None).unwrap();
        let sp = &base.sections;
        let im = &base.sequence.image;
        // s̄ = s + (first image vector) on every column
        let shift = |m: &RationalMatrix, b: Option<&crate::ratlin::QVec>| {
            let mut out = m.clone();
            if let Some(b) = b {
                for j in 0..m.cols() {
                    out.set_column(j, &crate::ratlin::add_vec(&out.column(j), b));
                }
            }
            out
        };
        let s_bar = GradedMap::new(shift(&sp.s.m0, im.s0.basis().first()), shift(&sp.s.m1, im.s1.basis().first()));
        let other = mu(&cm, Some(&SectionPair { s: s_bar.clone(), q: sp.q.clone() })).unwrap();
        assert_eq!(base.class_id, other.class_id);
        let (b, verdict) = section_change_witness(&cm, &sp.s, &s_bar, &sp.q).unwrap();
        assert!(verdict.passed(), "{verdict}");
        let (b0, v0) = section_change_witness(&cm, &sp.s, &sp.s, &sp.q).unwrap();
        assert!(b0.is_zero() && v0.passed());
        let _ = b;
        let id = strong_map_invariance(&cm, &cm, &Lie2Hom::identity(&cm.m), &Lie2Hom::identity(&cm.g)).unwrap();
        assert!(id.passed(), "{id}");
    }
}

#[test]
fn splice_and_connecting_map() {
    let seq = sl2_sequence();
    assert!(seq.check_exact().passed());
    let lam = cartan(&seq.quot);
    let cm = splice(&seq, &lam).unwrap();
    let m = mu(&cm, None).unwrap();
    let conn = connecting_map(&seq, 2).unwrap();
    assert!(conn.verdict.passed(), "{}", conn.verdict);
    let lam_class = crate::repcoh::class_coordinates(&seq.quot, &lam).unwrap();
    let expected = conn.matrix.mul_vec(&lam_class);
    assert_ne!(expected, vec![q(0)]);
    assert_eq!(m.sequence.module, seq.sub);
    assert_eq!(m.class_id, expected);

    let aff = aff1_sequence();
    assert!(aff.check_exact().passed());
    let cm = splice(&aff, &Cochain::zero(&aff.quot, 2)).unwrap();
    assert!(crate::crossmod::four_term_sequence(&cm).is_ok());
    assert!(mu(&cm, None).unwrap().class_id.iter().all(|c| *c == q(0)));
    for n in 0..3 {
        assert!(connecting_map(&aff, n).unwrap().verdict.passed());
    }
}

#[test]
fn split_sequence_has_zero_connecting_map() {
    let h = sl2();
    let t = |a, b| Lie2Module::trivial(h.clone(), plain_space(a, b));
    let seq = ModuleSequence {
        sub: t(1, 0),
        mid: t(1, 1),
        quot: t(0, 1),
        p: GradedMap::new(RationalMatrix::identity(1), RationalMatrix::zeros(1, 0)),
        q: GradedMap::new(RationalMatrix::zeros(0, 1), RationalMatrix::identity(1)),
    };
    let c = connecting_map(&seq, 2).unwrap();
    assert!(c.matrix.is_zero());
    assert!(c.verdict.passed());
}

#[test]
fn non_exact_sequence_is_refused() {
    let mut seq = sl2_sequence();
    seq.p = GradedMap::new(RationalMatrix::zeros(1, 1), RationalMatrix::zeros(1, 0));
    assert!(splice(&seq, &Cochain::zero(&seq.quot, 2)).is_err());
    assert!(connecting_map(&seq, 2).is_err());
}

#[test]
fn gauge_without_quadratic_part_is_a_strong_map() {
    for (k, v, lam) in [
        {
            let (k, v) = heis_fixture();
            let lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
            (k, v, lam)
        },
        {
            let (k, v) = sl2z_fixture();
            let lam = sl2z_lambda(&v);
            (k, v, lam)
        },
    ] {
        let mut a = random_cochain(&v, 1, 11);
        let a2 = a.block_mut(Block::new(2, 0, 1)).unwrap();
        *a2 = a2.scale(&q(0));
        let hm = check_lambda_condition(&v, &k, &lam).unwrap().h_module;
        let gt = gauge_transform(&v, &k, &lam, &a, &Cochain::zero(&hm, 2)).unwrap();
        assert!(gt.morphism.f.is_strong());
        let verdict = strong_map_invariance(&gt.source, &gt.target, &gt.morphism.f, &gt.morphism.g).unwrap();
        assert!(verdict.passed(), "{verdict}");
    }
}

#[test]
fn strong_map_refuses_wrong_diagram() {
    let (k, v) = heis_fixture();
    let lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
    let cm = epsilon_lambda(&v, &k, &lam).unwrap();
    let mut f = Lie2Hom::identity(&cm.m);
    f.maps.m0 = f.maps.m0.scale(&q(2));
    let verdict = strong_map_invariance(&cm, &cm, &f, &Lie2Hom::identity(&cm.g)).unwrap();
    assert!(!verdict.passed());
}

#[test]
fn elementary_check_flags_tau_outside_v() {
    let (k, v) = heis_fixture();
    let lam = with_block(&v, 2, Block::new(2, 0, 0), &[1, 2], &[], &[q(1)]);
    let cm = epsilon_lambda(&v, &k, &lam).unwrap();
    let mut tau = vec![RationalMatrix::zeros(cm.m.n1(), cm.m.n0()); cm.g.n0()];
    tau[0].set(0, 2, q(1));
    let mor = CrossedModuleMorphism { f: Lie2Hom::identity(&cm.m), g: Lie2Hom::identity(&cm.g), tau };
    let verdict = elementary_equivalence_check(&cm, &cm, &mor).unwrap();
    assert!(verdict.failed(ELEMENTARY_CONDITIONS[6]), "{verdict}");

    // m₁ = ℚc' ⊕ V₁: a τ valued in c' leaves V
    let (k, v) = skeletal_sl2_fixture();
    let cm = epsilon_lambda(&v, &k, &Cochain::zero(&v, 2)).unwrap();
    let mut tau = vec![RationalMatrix::zeros(cm.m.n1(), cm.m.n0()); cm.g.n0()];
    tau[0].set(0, 0, q(1));
    let mor = CrossedModuleMorphism { f: Lie2Hom::identity(&cm.m), g: Lie2Hom::identity(&cm.g), tau };
    let verdict = elementary_equivalence_check(&cm, &cm, &mor).unwrap();
    assert!(verdict.failed(ELEMENTARY_CONDITIONS[5]), "{verdict}");
}
