//! Crossed modules of Lie 2-algebras.
//!
//! A crossed module is an action of `g` on `m` by derivations together with
//! a homomorphism `Π = Id + σ + φ : g ▷ m → g` satisfying four axioms. This
//! module builds crossed products, checks the axioms, synthesises crossed
//! modules from module data, and constructs the mapping-cone Lie 3-algebra
//! and the derivation algebra `Der(g, m)`. A crossed module also yields
//! the exact sequence `0 → ker φ → m → g → coker φ → 0`.

mod cone;
mod der;
mod product;
mod seq;

pub use cone::{cone_l3_from_g_only, mapping_cone};
pub use der::{
    c1_lie_algebra, derivation_algebra, h1_lie_algebra, h1_with_complement, inner_ideal_residuals,
    minus_d_derivation_residuals, sigma_apply, theta_flat, theta_from_flat, zero_sigma, C1Data, DerivationAlgebra,
    FirstCohomology, Sigma, C1_CHECKS, INNER_IDEAL, MINUS_D_DERIVATION, SIGMA_SYMMETRY,
};
pub use product::{crossed_product, product_embeddings, split_crossed_product, Splitting};
pub use seq::{four_term_sequence, FourTermSequence, INDUCED_ACTION_HYPOTHESES};

use crate::error::{Error, Result};
use crate::graded::{BasisIndexer, GradedMap, MultiTensor, Target};
use crate::lie2core::{check_hom, is_ideal, GradedSubspace, Lie2Algebra, Lie2Hom};
use crate::ratlin::{axpy, neg_vec, q, unit_vec, zero_vec, QVec, RationalMatrix};
use crate::repcoh::{adjoint_module, one_cocycle_residuals, DerPair, Lie2Module};
use crate::report::{Tally, Verdict};

/// `g` acting on `m` by derivations: a module structure plus `l_{φ₀(x)} : Λ²m₀ → m₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivAction {
    /// `g` acting on the complex of `m`.
    pub module: Lie2Module,
    /// `lphi0[x]`, a tensor over the dimensions of `m`.
    pub lphi0: Vec<MultiTensor>,
}

impl DerivAction {
    /// The derivation `φ₀(x) + l_{φ₀(x)}` of `m`.
    pub fn derivation(&self, x: usize) -> DerPair {
        DerPair {
            x: GradedMap::new(self.module.act00[x].clone(), self.module.act01[x].clone()),
            lx: self.lphi0[x].clone(),
        }
    }

    /// The zero action of `g` on `m`.
    pub fn trivial(g: &Lie2Algebra, m: &Lie2Algebra) -> Self {
        let (k0, k1) = m.dims();
        Self {
            module: Lie2Module::trivial(g.clone(), m.space.clone()),
            lphi0: vec![MultiTensor::zero(2, 0, k0, k1, Target::V1, k1); g.n0()],
        }
    }

    /// `l_{φ₀(x)}` for a vector `x`.
    pub fn lphi0_at(&self, x: &[crate::ratlin::Rational]) -> MultiTensor {
        let mut out = self.lphi0[0].scale(&q(0));
        for (t, c) in self.lphi0.iter().zip(x) {
            out = out.add(&t.scale(c));
        }
        out
    }
}

/// `Der(m)`: derivations of `m` with `φ = Id` and `σ = 0`.
pub fn der_of(m: &Lie2Algebra) -> Result<DerivationAlgebra> {
    let (k0, k1) = m.dims();
    derivation_algebra(&adjoint_module(m), &GradedMap::identity(k0, k1), &zero_sigma(k0, k1, k0))
}

pub const ACTS_BY_DERIVATIONS: &str = "φ₀(x) + l_{φ₀(x)} is a derivation of m";

/// The assembled map `g → Der(m)` in `Der(m)` coordinates.
fn action_hom(der: &DerivationAlgebra, act: &DerivAction) -> Option<Lie2Hom> {
    let md = &act.module;
    let g = &md.algebra;
    let (n0, n1) = g.dims();
    let k = der.der0().dim();
    let cols: Option<Vec<QVec>> = (0..n0).map(|x| der.coords0(&act.derivation(x))).collect();
    let m0 = RationalMatrix::from_columns(&cols?, k);
    let (_, d1) = der.algebra.dims();
    let c1: Vec<QVec> = (0..n1).map(|a| theta_flat(&md.act10[a])).collect();
    let m1 = RationalMatrix::from_columns(&c1, d1);
    let phi2 = MultiTensor::from_fn(2, 0, n0, n1, Target::V1, d1, |xs, _| theta_flat(&md.rho2_basis(xs[0], xs[1])));
    Lie2Hom::new(g.clone(), der.algebra.clone(), GradedMap::new(m0, m1), phi2).ok()
}

/// Each `φ₀(x) + l_{φ₀(x)}` is a 1-cocycle of `m`, and `g → Der(m)` is a homomorphism.
pub fn check_deriv_action(m: &Lie2Algebra, act: &DerivAction) -> Result<Verdict> {
    if act.module.space != m.space || act.lphi0.len() != act.module.algebra.n0() {
        return Err(Error::Shape("action does not match m".into()));
    }
    let adj = adjoint_module(m);
    let mut v = Verdict::new();
    let mut t = Tally::new();
    for x in 0..act.lphi0.len() {
        let r = one_cocycle_residuals(&adj, &act.derivation(x));
        t.case(r.passed(), || {
            let c = r.first_failure().expect("failed");
            format!("x{x}: {} at {}", c.name, c.witness.clone().unwrap_or_default())
        });
    }
    t.into_verdict(&mut v, ACTS_BY_DERIVATIONS);
    if !v.passed() {
        return Ok(v);
    }
    let der = der_of(m)?;
    let hom = action_hom(&der, act).ok_or_else(|| Error::Shape("assembled action shapes".into()))?;
    v.absorb("g → Der(m)", check_hom(&hom));
    Ok(v)
}

/// `(m, g, action, φ, σ)` with `φ₂` stored separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub m: Lie2Algebra,
    pub g: Lie2Algebra,
    pub action: DerivAction,
    /// `(φ₀, φ₁) : m → g`.
    pub phi: GradedMap,
    /// `φ₂ : Λ²m₀ → g₁`.
    pub phi2: MultiTensor,
    /// `σ(x, ·) : m₀ → g₁`.
    pub sigma: Sigma,
}

impl CrossedModule {
    pub fn is_strong(&self) -> bool {
        self.sigma.iter().all(RationalMatrix::is_zero)
    }

    /// `σ(x, α)` for vectors.
    pub fn sigma_at(&self, x: &[crate::ratlin::Rational], alpha: &[crate::ratlin::Rational]) -> QVec {
        sigma_apply(&self.sigma, x, alpha)
    }

    /// `Π = ((id, φ₀), (id, φ₁), (0, σ, φ₂)) : g ▷ m → g`.
    pub fn pi(&self) -> Result<Lie2Hom> {
        let prod = crossed_product(&self.g, &self.m, &self.action)?;
        let (n0, n1) = self.g.dims();
        let (k0, k1) = self.m.dims();
        let m0 = RationalMatrix::identity(n0).hstack(&self.phi.m0);
        let m1 = RationalMatrix::identity(n1).hstack(&self.phi.m1);
        let pi2 = MultiTensor::from_fn(2, 0, n0 + k0, n1 + k1, Target::V1, n1, |xs, _| {
            let (i, j) = (xs[0], xs[1]);
            match (i < n0, j < n0) {
                (true, true) => zero_vec(n1),
                (true, false) => self.sigma[i].column(j - n0),
                (false, true) => neg_vec(&self.sigma[j].column(i - n0)),
                (false, false) => self.phi2.eval_basis(&[i - n0, j - n0], &[]),
            }
        });
        Lie2Hom::new(prod, self.g.clone(), GradedMap::new(m0, m1), pi2)
    }

    /// `φ` as a homomorphism `m → g`.
    pub fn phi_hom(&self) -> Result<Lie2Hom> {
        Lie2Hom::new(self.m.clone(), self.g.clone(), self.phi.clone(), self.phi2.clone())
    }
}

/// Names of the axioms checked by [`check_crossed_module`], in order.
pub const AXIOMS: [&str; 7] = [
    "φ is a chain map m → g",
    "crossed module axiom (i) on m₀ × m₀: l̃₂(α,β) = φ₀(α)▷β",
    "crossed module axiom (i) on m₀ × m₁: l̃₂(α,ξ) = φ₀(α)▷ξ",
    "crossed module axiom (i) on m₁ × m₀: l̃₂(ξ,α) = φ₁(ξ)▷α",
    "crossed module axiom (ii): l̃₃(α,β,γ) = −(φ₀α,φ₀β)▷γ − σ(φ₀α,β)▷γ",
    "crossed module axiom (iii): l_{φ₀(x)}(β,γ) = −(x,φ₀β)▷γ − σ(x,β)▷γ",
    "crossed module axiom (iv): φ₂(α,β) = σ(φ₀α,β) = σ(α,φ₀β)",
];

fn check_shapes(cm: &CrossedModule) -> Result<()> {
    let (n0, n1) = cm.g.dims();
    let (k0, k1) = cm.m.dims();
    let md = &cm.action.module;
    if md.algebra != cm.g || md.space != cm.m.space {
        return Err(Error::Shape("the action is not of g on m".into()));
    }
    if cm.phi.source_dims() != (k0, k1) || cm.phi.target_dims() != (n0, n1) {
        return Err(Error::Shape("φ must map m to g".into()));
    }
    let p2 = MultiTensor::zero(2, 0, k0, k1, Target::V1, n1);
    if !cm.phi2.same_shape(&p2) {
        return Err(Error::Shape("φ₂ must be a tensor Λ²m₀ → g₁".into()));
    }
    if cm.sigma.len() != n0 || cm.sigma.iter().any(|s| s.shape() != (n1, k0)) {
        return Err(Error::Shape("σ needs one n₁ × dim m₀ matrix per basis vector of g₀".into()));
    }
    Ok(())
}

/// Checks the action, axioms (i)–(iv), and that `Π` is a homomorphism.
pub fn check_crossed_module(cm: &CrossedModule) -> Result<Verdict> {
    check_shapes(cm)?;
    let (g, m) = (&cm.g, &cm.m);
    let md = &cm.action.module;
    let (n0, _) = g.dims();
    let (k0, k1) = m.dims();
    let mut v = Verdict::new();
    v.absorb("action by derivations", check_deriv_action(m, &cm.action)?);

    v.expect(AXIOMS[0], cm.phi.is_chain_map(&m.space, &g.space), || "φ₀d̃ ≠ dφ₁".into());

    let e = |i: usize| unit_vec(k0, i);
    let phi0 = |i: usize| cm.phi.m0.column(i);
    let mut t = Tally::new();
    for a in 0..k0 {
        for b in 0..k0 {
            let lhs = m.br00(&e(a), &e(b));
            let rhs = md.rho00(&phi0(a)).mul_vec(&e(b));
            t.case(lhs == rhs, || format!("(α{a}, α{b})"));
        }
    }
    t.into_verdict(&mut v, AXIOMS[1]);
    let mut t = Tally::new();
    for a in 0..k0 {
        for c in 0..k1 {
            let lhs = m.br01(&e(a), &unit_vec(k1, c));
            let rhs = md.rho01(&phi0(a)).column(c);
            t.case(lhs == rhs, || format!("(α{a}, ξ{c})"));
        }
    }
    t.into_verdict(&mut v, AXIOMS[2]);
    let mut t = Tally::new();
    for c in 0..k1 {
        for a in 0..k0 {
            // l̃₂(ξ, α) = −l̃₂(α, ξ)
            let lhs = neg_vec(&m.br01(&e(a), &unit_vec(k1, c)));
            let rhs = md.rho10(&cm.phi.m1.column(c)).column(a);
            t.case(lhs == rhs, || format!("(ξ{c}, α{a})"));
        }
    }
    t.into_verdict(&mut v, AXIOMS[3]);

    // −(u, φ₀β)▷γ − σ(u, β)▷γ
    let rhs3 = |u: &[crate::ratlin::Rational], b: usize, c: usize| {
        let mut r = neg_vec(&md.rho2(u, &phi0(b)).column(c));
        axpy(&mut r, &q(-1), &md.rho10(&cm.sigma_at(u, &e(b))).column(c));
        r
    };
    let mut t = Tally::new();
    for a in 0..k0 {
        for b in 0..k0 {
            for c in 0..k0 {
                let lhs = m.l3v(&e(a), &e(b), &e(c));
                t.case(lhs == rhs3(&phi0(a), b, c), || format!("(α{a}, α{b}, α{c})"));
            }
        }
    }
    t.into_verdict(&mut v, AXIOMS[4]);
    let mut t = Tally::new();
    for x in 0..n0 {
        for b in 0..k0 {
            for c in 0..k0 {
                let lhs = cm.action.lphi0[x].eval(&[&e(b), &e(c)], &[]);
                t.case(lhs == rhs3(&g.e0(x), b, c), || format!("(x{x}, α{b}, α{c})"));
            }
        }
    }
    t.into_verdict(&mut v, AXIOMS[5]);
    let mut t = Tally::new();
    for a in 0..k0 {
        for b in 0..k0 {
            let lhs = cm.phi2.eval(&[&e(a), &e(b)], &[]);
            let mid = cm.sigma_at(&phi0(a), &e(b));
            let right = neg_vec(&cm.sigma_at(&phi0(b), &e(a)));
            t.case(lhs == mid && mid == right, || format!("(α{a}, α{b})"));
        }
    }
    t.into_verdict(&mut v, AXIOMS[6]);

    v.absorb("Π", check_hom(&cm.pi()?));
    Ok(v)
}

/// Names of the hypotheses of [`build_from_data`].
pub const BUILD_CONDITIONS: [&str; 5] = [
    "φ is a chain map m → g",
    "crossed module condition (1): φ(α)▷β = −φ(β)▷α",
    "crossed module condition (2): (φ₀α,φ₀β)▷γ + σ(φ₀α,β)▷γ is antisymmetric in β, γ",
    "crossed module condition (3): (x,φ₀β)▷γ + σ(x,β)▷γ is antisymmetric in β, γ",
    "crossed module condition (4): σ(φ₀α,β) = σ(α,φ₀β)",
];

pub(crate) fn refuse_first(v: &Verdict) -> Result<()> {
    match v.first_failure() {
        Some(c) => Err(Error::refused(c.name.clone(), c.witness.clone().unwrap_or_default())),
        None => Ok(()),
    }
}

/// The crossed module determined by a `g`-module `m`, a chain map `φ : m → g`,
/// and `σ : g₀ ∧ m₀ → g₁`; `l̃₂`, `l̃₃`, `l_{φ₀}`, `φ₂` are read off the axioms.
pub fn build_from_data(module: &Lie2Module, phi: &GradedMap, sigma: &[RationalMatrix]) -> Result<CrossedModule> {
    let g = &module.algebra;
    let (n0, n1) = g.dims();
    let (k0, k1) = (module.v0(), module.v1());
    if phi.source_dims() != (k0, k1) || phi.target_dims() != (n0, n1) {
        return Err(Error::Shape("φ must map the module to g".into()));
    }
    if sigma.len() != n0 || sigma.iter().any(|s| s.shape() != (n1, k0)) {
        return Err(Error::Shape("σ needs one n₁ × v₀ matrix per basis vector of g₀".into()));
    }
    let e = |i: usize| unit_vec(k0, i);
    let phi0 = |i: usize| phi.m0.column(i);
    let act3 = |u: &[crate::ratlin::Rational], b: usize, c: usize| {
        let mut r = module.rho2(u, &phi0(b)).column(c);
        axpy(&mut r, &q(1), &module.rho10(&sigma_apply(sigma, u, &e(b))).column(c));
        r
    };

    let mut v = Verdict::new();
    v.expect(BUILD_CONDITIONS[0], phi.is_chain_map(&module.space, &g.space), || "φ₀∂ ≠ dφ₁".into());
    let mut t = Tally::new();
    for a in 0..k0 {
        for b in 0..k0 {
            let lhs = module.rho00(&phi0(a)).column(b);
            let rhs = neg_vec(&module.rho00(&phi0(b)).column(a));
            t.case(lhs == rhs, || format!("(α{a}, α{b})"));
        }
        for c in 0..k1 {
            let lhs = module.rho01(&phi0(a)).column(c);
            let rhs = neg_vec(&module.rho10(&phi.m1.column(c)).column(a));
            t.case(lhs == rhs, || format!("(α{a}, ξ{c})"));
        }
    }
    t.into_verdict(&mut v, BUILD_CONDITIONS[1]);
    let mut t = Tally::new();
    for a in 0..k0 {
        for b in 0..k0 {
            for c in 0..k0 {
                let lhs = act3(&phi0(a), b, c);
                let rhs = neg_vec(&act3(&phi0(a), c, b));
                t.case(lhs == rhs, || format!("(α{a}, α{b}, α{c})"));
            }
        }
    }
    t.into_verdict(&mut v, BUILD_CONDITIONS[2]);
    let mut t = Tally::new();
    for x in 0..n0 {
        for b in 0..k0 {
            for c in 0..k0 {
                let lhs = act3(&g.e0(x), b, c);
                let rhs = neg_vec(&act3(&g.e0(x), c, b));
                t.case(lhs == rhs, || format!("(x{x}, α{b}, α{c})"));
            }
        }
    }
    t.into_verdict(&mut v, BUILD_CONDITIONS[3]);
    let mut t = Tally::new();
    for a in 0..k0 {
        for b in 0..k0 {
            let lhs = sigma_apply(sigma, &phi0(a), &e(b));
            let rhs = neg_vec(&sigma_apply(sigma, &phi0(b), &e(a)));
            t.case(lhs == rhs, || format!("(α{a}, α{b})"));
        }
    }
    t.into_verdict(&mut v, BUILD_CONDITIONS[4]);
    refuse_first(&v)?;

    // Π from the semidirect product (m abelian, l_{φ₀} = 0, φ₂ = 0)
    let abelian_m = Lie2Algebra::abelian(module.space.clone());
    let semi = CrossedModule {
        m: abelian_m.clone(),
        g: g.clone(),
        action: DerivAction { module: module.clone(), lphi0: DerivAction::trivial(g, &abelian_m).lphi0 },
        phi: phi.clone(),
        phi2: MultiTensor::zero(2, 0, k0, k1, Target::V1, n1),
        sigma: sigma.to_vec(),
    };
    let mut pv = Verdict::new();
    pv.absorb("Π on the semidirect product", check_hom(&semi.pi()?));
    refuse_first(&pv)?;

    let mut m = Lie2Algebra::abelian(module.space.clone());
    m.l2_00 = MultiTensor::from_fn(2, 0, k0, k1, Target::V0, k0, |xs, _| module.rho00(&phi0(xs[0])).column(xs[1]));
    m.l2_01 = MultiTensor::from_fn(1, 1, k0, k1, Target::V1, k1, |xs, as_| {
        module.rho01(&phi0(xs[0])).column(as_[0])
    });
    m.l3 = MultiTensor::from_fn(3, 0, k0, k1, Target::V1, k1, |xs, _| neg_vec(&act3(&phi0(xs[0]), xs[1], xs[2])));
    let lphi0 = (0..n0)
        .map(|x| MultiTensor::from_fn(2, 0, k0, k1, Target::V1, k1, |xs, _| neg_vec(&act3(&g.e0(x), xs[0], xs[1]))))
        .collect();
    let phi2 = MultiTensor::from_fn(2, 0, k0, k1, Target::V1, n1, |xs, _| sigma_apply(sigma, &phi0(xs[0]), &e(xs[1])));
    let cm = CrossedModule {
        m,
        g: g.clone(),
        action: DerivAction { module: module.clone(), lphi0 },
        phi: phi.clone(),
        phi2,
        sigma: sigma.to_vec(),
    };
    refuse_first(&check_crossed_module(&cm)?)?;
    Ok(cm)
}

/// `(g, Der(g), Id, ad-bar, σ)` with `σ(X + l_X, x) = −l_X(x, ·)`.
pub fn derivation_crossed_module(g: &Lie2Algebra) -> Result<(CrossedModule, DerivationAlgebra)> {
    let der = der_of(g)?;
    let big = der.algebra.clone();
    let (n0, n1) = g.dims();
    let (d0, d1) = big.dims();
    let basis0: Vec<DerPair> = (0..d0).map(|i| der.element0(i)).collect();
    let act00 = basis0.iter().map(|d| d.x.m0.clone()).collect();
    let act01 = basis0.iter().map(|d| d.x.m1.clone()).collect();
    let act10 = (0..d1).map(|j| der.element1(j)).collect();
    let act2 = vec![RationalMatrix::zeros(n1, n0); BasisIndexer::get(d0, 2, true).len()];
    let module = Lie2Module::new(big.clone(), g.space.clone(), act00, act01, act10, act2)?;
    let lphi0 = basis0.iter().map(|d| d.lx.clone()).collect();

    let adj = ad_bar(g, &der)?;
    let sigma = basis0
        .iter()
        .map(|d| {
            let cols: Vec<QVec> = (0..n0)
                .map(|x| {
                    // −l_X(x, ·) as a matrix g₀ → g₁
                    let c: Vec<QVec> = (0..n0).map(|y| neg_vec(&d.lx.eval_basis(&[x, y], &[]))).collect();
                    theta_flat(&RationalMatrix::from_columns(&c, n1))
                })
                .collect();
            RationalMatrix::from_columns(&cols, d1)
        })
        .collect();
    let cm = CrossedModule {
        m: g.clone(),
        g: big,
        action: DerivAction { module, lphi0 },
        phi: adj.maps.clone(),
        phi2: adj.phi2.clone(),
        sigma,
    };
    Ok((cm, der))
}

/// The adjoint homomorphism `g → Der(g)`: `x ↦ (ad x, l₃(x,·,·))`, `a ↦ ad a`,
/// `(x, y) ↦ −l₃(x, y, ·)`.
pub fn ad_bar(g: &Lie2Algebra, der: &DerivationAlgebra) -> Result<Lie2Hom> {
    let (n0, n1) = g.dims();
    let (d0, d1) = der.algebra.dims();
    let cols0 = (0..n0)
        .map(|x| {
            let ex = g.e0(x);
            let lx = MultiTensor::from_fn(2, 0, n0, n1, Target::V1, n1, |ys, _| {
                g.l3v(&ex, &g.e0(ys[0]), &g.e0(ys[1]))
            });
            let d = DerPair { x: GradedMap::new(g.ad00(&ex), g.ad01(&ex)), lx };
            der.coords0(&d).ok_or_else(|| Error::refused("ad x is a derivation", format!("x{x}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let cols1: Vec<QVec> = (0..n1).map(|a| theta_flat(&g.ad10(&g.e1(a)))).collect();
    let phi2 = MultiTensor::from_fn(2, 0, n0, n1, Target::V1, d1, |xs, _| {
        let c: Vec<QVec> = (0..n0).map(|z| neg_vec(&g.l3v(&g.e0(xs[0]), &g.e0(xs[1]), &g.e0(z)))).collect();
        theta_flat(&RationalMatrix::from_columns(&c, n1))
    });
    Lie2Hom::new(
        g.clone(),
        der.algebra.clone(),
        GradedMap::new(RationalMatrix::from_columns(&cols0, d0), RationalMatrix::from_columns(&cols1, d1)),
        phi2,
    )
}

/// `(h, g, ad-bar, i)` for an ideal `h ⊂ g`, in the echelon basis of `h`.
pub fn ideal_crossed_module(g: &Lie2Algebra, h: &GradedSubspace) -> Result<CrossedModule> {
    refuse_first(&is_ideal(g, h)?)?;
    let m = g.restrict(h)?;
    let (n0, n1) = g.dims();
    let (k0, k1) = m.dims();
    let b0 = h.s0.basis();
    let b1 = h.s1.basis();
    let c0 = |v: &[crate::ratlin::Rational]| h.s0.coordinates(v).expect("ideal");
    let c1 = |v: &[crate::ratlin::Rational]| h.s1.coordinates(v).expect("ideal");
    let mat = |cols: Vec<QVec>, rows: usize| RationalMatrix::from_columns(&cols, rows);
    let act00 = (0..n0).map(|x| mat(b0.iter().map(|b| c0(&g.br00(&g.e0(x), b))).collect(), k0)).collect();
    let act01 = (0..n0).map(|x| mat(b1.iter().map(|b| c1(&g.br01(&g.e0(x), b))).collect(), k1)).collect();
    let act10 = (0..n1)
        .map(|a| mat(b0.iter().map(|b| c1(&neg_vec(&g.br01(b, &g.e1(a))))).collect(), k1))
        .collect();
    let act2 = BasisIndexer::get(n0, 2, true)
        .tuples()
        .iter()
        .map(|t| mat(b0.iter().map(|b| c1(&neg_vec(&g.l3v(&g.e0(t[0]), &g.e0(t[1]), b)))).collect(), k1))
        .collect();
    let module = Lie2Module::new(g.clone(), m.space.clone(), act00, act01, act10, act2)?;
    let lphi0 = (0..n0)
        .map(|x| {
            MultiTensor::from_fn(2, 0, k0, k1, Target::V1, k1, |ys, _| c1(&g.l3v(&g.e0(x), &b0[ys[0]], &b0[ys[1]])))
        })
        .collect();
    Ok(CrossedModule {
        m,
        g: g.clone(),
        action: DerivAction { module, lphi0 },
        phi: GradedMap::new(h.s0.inclusion(), h.s1.inclusion()),
        phi2: MultiTensor::zero(2, 0, k0, k1, Target::V1, n1),
        sigma: zero_sigma(n0, n1, k0),
    })
}

/// A morphism `(F, G, τ)` of crossed modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModuleMorphism {
    pub f: Lie2Hom,
    pub g: Lie2Hom,
    /// `τ(x, ·) : m₀ → m′₁`, one matrix per basis vector of `g₀`.
    pub tau: Vec<RationalMatrix>,
}

pub const MORPHISM_COMMUTES: &str = "φ′∘F = G∘φ";

/// `φ′∘F = G∘φ` (as homomorphisms) and `((G₀,F₀),(G₁,F₁),(G₂,τ,F₂))` is a
/// homomorphism of crossed products.
pub fn check_morphism(src: &CrossedModule, tgt: &CrossedModule, mor: &CrossedModuleMorphism) -> Result<Verdict> {
    let (n0, n1) = src.g.dims();
    let (k0, k1) = src.m.dims();
    let (n0p, n1p) = tgt.g.dims();
    let (_, k1p) = tgt.m.dims();
    if mor.f.source.dims() != (k0, k1)
        || mor.g.source.dims() != (n0, n1)
        || mor.f.target.dims() != tgt.m.dims()
        || mor.g.target.dims() != (n0p, n1p)
        || mor.tau.len() != n0
        || mor.tau.iter().any(|t| t.shape() != (k1p, k0))
    {
        return Err(Error::Shape("morphism components do not match the crossed modules".into()));
    }
    let mut v = Verdict::new();
    let lhs = crate::lie2core::compose(&tgt.phi_hom()?, &mor.f)?;
    let rhs = crate::lie2core::compose(&mor.g, &src.phi_hom()?)?;
    v.expect(MORPHISM_COMMUTES, lhs.maps == rhs.maps && lhs.phi2 == rhs.phi2, || {
        if lhs.maps != rhs.maps {
            "linear parts differ".into()
        } else {
            "quadratic parts differ".into()
        }
    });
    let p = crossed_product(&src.g, &src.m, &src.action)?;
    let pp = crossed_product(&tgt.g, &tgt.m, &tgt.action)?;
    let blk = |a: &RationalMatrix, b: &RationalMatrix| {
        let top = a.hstack(&RationalMatrix::zeros(a.rows(), b.cols()));
        top.vstack(&RationalMatrix::zeros(b.rows(), a.cols()).hstack(b))
    };
    let m0 = blk(&mor.g.maps.m0, &mor.f.maps.m0);
    let m1 = blk(&mor.g.maps.m1, &mor.f.maps.m1);
    let (_, t1) = pp.dims();
    let lift = |v: QVec, off: usize| {
        let mut w = zero_vec(t1);
        for (i, c) in v.into_iter().enumerate() {
            w[off + i] = c;
        }
        w
    };
    let h2 = MultiTensor::from_fn(2, 0, n0 + k0, n1 + k1, Target::V1, t1, |xs, _| {
        let (i, j) = (xs[0], xs[1]);
        match (i < n0, j < n0) {
            (true, true) => lift(mor.g.phi2.eval_basis(&[i, j], &[]), 0),
            (true, false) => lift(mor.tau[i].column(j - n0), n1p),
            (false, true) => lift(neg_vec(&mor.tau[j].column(i - n0)), n1p),
            (false, false) => lift(mor.f.phi2.eval_basis(&[i - n0, j - n0], &[]), n1p),
        }
    });
    let hom = Lie2Hom::new(p, pp, GradedMap::new(m0, m1), h2)?;
    v.absorb("crossed products", check_hom(&hom));
    Ok(v)
}

#[cfg(test)]
mod tests;
