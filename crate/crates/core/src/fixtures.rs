//! Small named algebras and modules used by examples, tests, and the CLI.

use crate::classify::ModuleSequence;
use crate::graded::{GradedMap, MultiTensor, Target, TwoTermSpace};
use crate::lie2core::{GradedSubspace, Lie2Algebra};
use crate::ratlin::{q, unit_vec, RationalMatrix};
use crate::repcoh::{Block, Cochain, Lie2Module};

/// `aff(1)`: `[x₀, x₁] = x₁`.
pub fn aff1() -> Lie2Algebra {
    Lie2Algebra::from_lie_algebra(2, &[(0, 1, 1, q(1))])
}

/// `sl₂` in the basis `e, h, f` (indices 0, 1, 2).
pub fn sl2() -> Lie2Algebra {
    Lie2Algebra::from_lie_algebra(3, &[(1, 0, 0, q(2)), (1, 2, 2, q(-2)), (0, 2, 1, q(1))])
}

/// Heisenberg algebra: `[x₀, x₁] = x₂`.
pub fn heis() -> Lie2Algebra {
    Lie2Algebra::from_lie_algebra(3, &[(0, 1, 2, q(1))])
}

pub fn abelian(n0: usize, n1: usize) -> Lie2Algebra {
    Lie2Algebra::abelian(TwoTermSpace::plain(n0, n1))
}

/// Skeletal `sl₂ ⊕ ℚ[1]` with trivial action and `l₃(e, h, f) = 1`.
pub fn skeletal_sl2() -> Lie2Algebra {
    let base = sl2();
    let mut g = Lie2Algebra::abelian(TwoTermSpace::plain(3, 1));
    g.l2_00 = MultiTensor::from_coeffs(2, 0, 3, 1, Target::V0, base.l2_00.coeffs().clone())
        .expect("sl2 bracket shape");
    g.l3.add_basis(&[0, 1, 2], &[], &[q(1)]);
    g
}

/// Strict Lie 2-algebra of the ideal `span{x₁} ⊂ aff(1)`: `d(a) = x₁`,
/// `l₂(x₀, a) = a`.
pub fn strict_aff1() -> Lie2Algebra {
    let space = TwoTermSpace::new(2, 1, RationalMatrix::from_ints(&[&[0], &[1]])).expect("d shape");
    let mut g = Lie2Algebra::abelian(space);
    g.l2_00 = aff1().l2_00.pullback(&RationalMatrix::identity(2), &RationalMatrix::zeros(0, 1));
    g.l2_01.add_basis(&[0], &[0], &[q(1)]);
    g
}

/// Skeletal `aff(1) ⋉ ℚ` where `x₀` acts on `g₁` with weight 1.
pub fn skeletal_aff1() -> Lie2Algebra {
    let mut g = Lie2Algebra::abelian(TwoTermSpace::plain(2, 1));
    g.l2_00.add_basis(&[0, 1], &[], &[q(0), q(1)]);
    g.l2_01.add_basis(&[0], &[0], &[q(1)]);
    g
}

/// `n`-dimensional two-term space with zero differential.
pub fn plain_space(v0: usize, v1: usize) -> TwoTermSpace {
    TwoTermSpace::plain(v0, v1)
}

/// `ℚ --id--> ℚ`.
pub fn identity_space() -> TwoTermSpace {
    TwoTermSpace::new(1, 1, RationalMatrix::identity(1)).expect("1x1")
}

/// `(V, k, λ)` on the Heisenberg algebra: `k = span{x₁, x₂}`, trivial
/// `V = (ℚ, ℚ)`, `λ = x₁*∧x₂* ⊗ v₀ + 2 x₀*∧x₁*∧x₂* ⊗ v₁`.
pub fn heis_extension() -> (Lie2Module, GradedSubspace, Cochain) {
    let v = Lie2Module::trivial(heis(), plain_space(1, 1));
    let k = GradedSubspace::span(3, &[unit_vec(3, 1), unit_vec(3, 2)], 0, &[]);
    let mut lam = Cochain::zero(&v, 2);
    lam.block_mut(Block::new(2, 0, 0)).expect("block").add_basis(&[1, 2], &[], &[q(1)]);
    lam.block_mut(Block::new(3, 0, 1)).expect("block").add_basis(&[0, 1, 2], &[], &[q(2)]);
    (v, k, lam)
}

/// `(V, k, λ)` on `ℚ --id--> ℚ` with `k = (ℚ, 0)`, `V = (0, ℚ)`, and
/// `λ(y, a) = 3`; its class in `H³(h, V)` is nonzero.
pub fn shift_extension() -> (Lie2Module, GradedSubspace, Cochain) {
    let g = Lie2Algebra::abelian(identity_space());
    let v = Lie2Module::trivial(g, plain_space(0, 1));
    let k = GradedSubspace::span(1, &[unit_vec(1, 0)], 1, &[]);
    let mut lam = Cochain::zero(&v, 2);
    lam.block_mut(Block::new(1, 1, 1)).expect("block").add_basis(&[0], &[0], &[q(3)]);
    (v, k, lam)
}

/// `sl₂` acting trivially on `(ℚ, 0) → (ℚ --id--> ℚ) → (0, ℚ)`.
pub fn sl2_sequence() -> ModuleSequence {
    let h = sl2();
    ModuleSequence {
        sub: Lie2Module::trivial(h.clone(), plain_space(1, 0)),
        mid: Lie2Module::trivial(h.clone(), identity_space()),
        quot: Lie2Module::trivial(h, plain_space(0, 1)),
        p: GradedMap::new(RationalMatrix::identity(1), RationalMatrix::zeros(1, 0)),
        q: GradedMap::new(RationalMatrix::zeros(0, 1), RationalMatrix::identity(1)),
    }
}

/// `aff(1)` acting by `x₀ ↦ 1` on `(ℚ, 0) → (ℚ --id--> ℚ) → (0, ℚ)`.
pub fn aff1_sequence() -> ModuleSequence {
    let h = aff1();
    let weight = |space: TwoTermSpace| {
        let (v0, v1) = (space.dim(0), space.dim(1));
        let a00 = vec![RationalMatrix::identity(v0), RationalMatrix::zeros(v0, v0)];
        let a01 = vec![RationalMatrix::identity(v1), RationalMatrix::zeros(v1, v1)];
        Lie2Module::new(h.clone(), space, a00, a01, vec![], vec![RationalMatrix::zeros(v1, v0)])
            .expect("weight module shapes")
    };
    ModuleSequence {
        sub: weight(plain_space(1, 0)),
        mid: weight(identity_space()),
        quot: weight(plain_space(0, 1)),
        p: GradedMap::new(RationalMatrix::identity(1), RationalMatrix::zeros(1, 0)),
        q: GradedMap::new(RationalMatrix::zeros(0, 1), RationalMatrix::identity(1)),
    }
}

/// The Cartan 3-cocycle `e*∧h*∧f*` of `sl₂` as a degree-2 cochain with values in `Q₁`.
pub fn cartan_cocycle(m: &Lie2Module) -> Cochain {
    let mut c = Cochain::zero(m, 2);
    c.block_mut(Block::new(3, 0, 1)).expect("block").add_basis(&[0, 1, 2], &[], &[q(1)]);
    c
}

/// `(V, k, λ)` on `sl₂ ⊕ ℚz` with `k = ℚz`, trivial `V = (ℚ, ℚ)`, and
/// `λ = e*∧f* ⊗ v₀ + (e*∧h*∧z* + 2 e*∧h*∧f*) ⊗ v₁`.
pub fn sl2z_extension() -> (Lie2Module, GradedSubspace, Cochain) {
    let g = Lie2Algebra::from_lie_algebra(4, &[(1, 0, 0, q(2)), (1, 2, 2, q(-2)), (0, 2, 1, q(1))]);
    let v = Lie2Module::trivial(g, plain_space(1, 1));
    let k = GradedSubspace::span(4, &[unit_vec(4, 3)], 0, &[]);
    let mut lam = Cochain::zero(&v, 2);
    let b3 = lam.block_mut(Block::new(3, 0, 1)).expect("block");
    b3.add_basis(&[0, 1, 3], &[], &[q(1)]);
    b3.add_basis(&[0, 1, 2], &[], &[q(2)]);
    lam.block_mut(Block::new(2, 0, 0)).expect("block").add_basis(&[0, 2], &[], &[q(1)]);
    (v, k, lam)
}
