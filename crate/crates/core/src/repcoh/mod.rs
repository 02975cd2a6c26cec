//! Modules over Lie 2-algebras and their cohomology.
//!
//! A module is a two-term complex `V₁ → V₀` with an action given by four
//! pieces: `x▷` on `V₀` and `V₁`, `a▷ : V₀ → V₁`, and `(x,y)▷ : V₀ → V₁`.
//! The cochain complex, its coboundary `D`, and the low-degree formulas for
//! cocycles live in the submodules.

mod coboundary;
mod cochain;
mod cohomology;
mod lemmas;

pub use coboundary::{apply_coboundary, apply_component, coboundary, Component};
pub use cochain::{cochain_space, Block, Cochain, CochainLayout};
pub use cohomology::{class_coordinates, cohomologous, cohomology, degree_ceiling, Cohomology};
pub use lemmas::{
    is_derivation, SKELETAL_CHECKS,
    one_coboundary, one_cocycle_residuals, skeletal_derivation_check, three_coboundary, DerPair,
    COCYCLE_EQUATIONS,
};

use crate::error::{Error, Result};
use crate::graded::{BasisIndexer, GradedMap, MultiTensor, Target, TwoTermSpace};
use crate::lie2core::{check_hom, Lie2Algebra, Lie2Hom};
use crate::ratlin::{kernel_basis, zero_vec, QVec, Rational, RationalMatrix, Subspace};
use crate::report::Verdict;

/// `g` acting on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie2Module {
    pub algebra: Lie2Algebra,
    pub space: TwoTermSpace,
    /// `act00[x]`: matrix of `x▷` on `V₀`.
    pub act00: Vec<RationalMatrix>,
    /// `act01[x]`: matrix of `x▷` on `V₁`.
    pub act01: Vec<RationalMatrix>,
    /// `act10[a]`: matrix of `a▷ : V₀ → V₁`.
    pub act10: Vec<RationalMatrix>,
    /// `act2[k]` for the k-th canonical pair `x < y`: matrix of `(x,y)▷ : V₀ → V₁`.
    pub act2: Vec<RationalMatrix>,
}

impl Lie2Module {
    pub fn new(
        algebra: Lie2Algebra,
        space: TwoTermSpace,
        act00: Vec<RationalMatrix>,
        act01: Vec<RationalMatrix>,
        act10: Vec<RationalMatrix>,
        act2: Vec<RationalMatrix>,
    ) -> Result<Self> {
        let (n0, n1) = algebra.dims();
        let (v0, v1) = (space.dim0, space.dim1);
        let pairs = BasisIndexer::get(n0, 2, true).len();
        let ok = |ms: &[RationalMatrix], count: usize, shape: (usize, usize)| {
            ms.len() == count && ms.iter().all(|m| m.shape() == shape)
        };
        if !ok(&act00, n0, (v0, v0))
            || !ok(&act01, n0, (v1, v1))
            || !ok(&act10, n1, (v1, v0))
            || !ok(&act2, pairs, (v1, v0))
        {
            return Err(Error::Shape("action matrices do not match the algebra and module dimensions".into()));
        }
        Ok(Self { algebra, space, act00, act01, act10, act2 })
    }

    /// Zero action.
    pub fn trivial(algebra: Lie2Algebra, space: TwoTermSpace) -> Self {
        let (n0, n1) = algebra.dims();
        let (v0, v1) = (space.dim0, space.dim1);
        let pairs = BasisIndexer::get(n0, 2, true).len();
        Self {
            act00: vec![RationalMatrix::zeros(v0, v0); n0],
            act01: vec![RationalMatrix::zeros(v1, v1); n0],
            act10: vec![RationalMatrix::zeros(v1, v0); n1],
            act2: vec![RationalMatrix::zeros(v1, v0); pairs],
            algebra,
            space,
        }
    }

    pub fn v0(&self) -> usize {
        self.space.dim0
    }

    pub fn v1(&self) -> usize {
        self.space.dim1
    }

    pub fn partial(&self, m: &[Rational]) -> QVec {
        self.space.diff.mul_vec(m)
    }

    fn combo(ms: &[RationalMatrix], coeffs: &[Rational], rows: usize, cols: usize) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(rows, cols);
        for (m, c) in ms.iter().zip(coeffs) {
            if !num_traits::Zero::is_zero(c) {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// Matrix of `x▷` on `V₀`.
    pub fn rho00(&self, x: &[Rational]) -> RationalMatrix {
        Self::combo(&self.act00, x, self.v0(), self.v0())
    }

    /// Matrix of `x▷` on `V₁`.
    pub fn rho01(&self, x: &[Rational]) -> RationalMatrix {
        Self::combo(&self.act01, x, self.v1(), self.v1())
    }

    /// Matrix of `a▷ : V₀ → V₁`.
    pub fn rho10(&self, a: &[Rational]) -> RationalMatrix {
        Self::combo(&self.act10, a, self.v1(), self.v0())
    }

    /// Matrix of `(e_x, e_y)▷`, antisymmetric in `x, y`.
    pub fn rho2_basis(&self, x: usize, y: usize) -> RationalMatrix {
        let n0 = self.algebra.n0();
        if x == y {
            return RationalMatrix::zeros(self.v1(), self.v0());
        }
        let ix = BasisIndexer::get(n0, 2, true);
        let (a, b, s) = if x < y { (x, y, 1) } else { (y, x, -1) };
        let m = &self.act2[ix.index_of(&[a, b]).expect("pair")];
        if s > 0 {
            m.clone()
        } else {
            m.neg()
        }
    }

    /// Matrix of `(x, y)▷` for arbitrary vectors.
    pub fn rho2(&self, x: &[Rational], y: &[Rational]) -> RationalMatrix {
        let n0 = self.algebra.n0();
        let mut out = RationalMatrix::zeros(self.v1(), self.v0());
        for i in 0..n0 {
            for j in 0..n0 {
                let c = &x[i] * &y[j];
                if i != j && !num_traits::Zero::is_zero(&c) {
                    out = out.add(&self.rho2_basis(i, j).scale(&c));
                }
            }
        }
        out
    }

    /// `act2` as a tensor `Λ²g₀ → Hom(V₀, V₁)` (flattened row-major).
    pub fn act2_tensor(&self) -> MultiTensor {
        let (n0, n1) = self.algebra.dims();
        MultiTensor::from_fn(2, 0, n0, n1, Target::V1, self.v0() * self.v1(), |xs, _| {
            flatten_matrix(&self.rho2_basis(xs[0], xs[1]))
        })
    }

    /// Pulls the action back along a homomorphism `f : h → g`.
    pub fn pullback(&self, f: &Lie2Hom) -> Result<Lie2Module> {
        if f.target != self.algebra {
            return Err(Error::Shape("homomorphism target is not the acting algebra".into()));
        }
        let h = &f.source;
        let (n0, n1) = h.dims();
        let act00 = (0..n0).map(|x| self.rho00(&f.phi0(&h.e0(x)))).collect();
        let act01 = (0..n0).map(|x| self.rho01(&f.phi0(&h.e0(x)))).collect();
        let act10 = (0..n1).map(|a| self.rho10(&f.phi1(&h.e1(a)))).collect();
        // (φ∘f)₂ = φ₁∘f₂ + φ₂∘(f₀∧f₀)
        let act2 = BasisIndexer::get(n0, 2, true)
            .tuples()
            .iter()
            .map(|t| {
                let a = self.rho10(&f.phi2.eval_basis(t, &[]));
                let b = self.rho2(&f.phi0(&h.e0(t[0])), &f.phi0(&h.e0(t[1])));
                a.add(&b)
            })
            .collect();
        Lie2Module::new(h.clone(), self.space.clone(), act00, act01, act10, act2)
    }

    /// The same action in new module coordinates `u' = P₀u`, `m' = P₁m`.
    pub fn transport(&self, p0: &RationalMatrix, p1: &RationalMatrix) -> Result<Lie2Module> {
        let i0 = p0.inverse()?;
        let i1 = p1.inverse()?;
        let space = TwoTermSpace::new(self.v0(), self.v1(), p0.mul(&self.space.diff).mul(&i1))?;
        Lie2Module::new(
            self.algebra.clone(),
            space,
            self.act00.iter().map(|m| p0.mul(m).mul(&i0)).collect(),
            self.act01.iter().map(|m| p1.mul(m).mul(&i1)).collect(),
            self.act10.iter().map(|m| p1.mul(m).mul(&i0)).collect(),
            self.act2.iter().map(|m| p1.mul(m).mul(&i0)).collect(),
        )
    }

    /// Same module over an isomorphic copy of the algebra (`x' = P₀x`, `a' = P₁a`).
    pub fn over_transported_algebra(&self, p0: &RationalMatrix, p1: &RationalMatrix) -> Result<Lie2Module> {
        let g = self.algebra.transport(p0, p1)?;
        let i0 = p0.inverse()?;
        let i1 = p1.inverse()?;
        let back = Lie2Hom::strong(g.clone(), self.algebra.clone(), GradedMap::new(i0, i1))?;
        self.pullback(&back)
    }
}

/// Row-major flattening of a matrix.
pub fn flatten_matrix(m: &RationalMatrix) -> QVec {
    m.entries().to_vec()
}

fn unflatten_matrix(v: &[Rational], rows: usize, cols: usize) -> RationalMatrix {
    RationalMatrix::from_vec(rows, cols, v.to_vec()).expect("flattened matrix length")
}

/// The strict Lie 2-algebra `End(V)` with `End₁ = Hom(V₀,V₁)` and
/// `End₀ = {(X₀,X₁) : X₀∂ = ∂X₁}`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub space: TwoTermSpace,
    pub algebra: Lie2Algebra,
    /// Basis of `End₀` as flattened `(X₀, X₁)` vectors.
    end0: Subspace,
}

impl EndAlgebra {
    fn flat_pair(&self, x0: &RationalMatrix, x1: &RationalMatrix) -> QVec {
        let mut v = flatten_matrix(x0);
        v.extend(flatten_matrix(x1));
        v
    }

    /// Coordinates of `(X₀, X₁)` in the `End₀` basis, if it commutes with `∂`.
    pub fn coords0(&self, x0: &RationalMatrix, x1: &RationalMatrix) -> Option<QVec> {
        self.end0.coordinates(&self.flat_pair(x0, x1))
    }

    /// The basis element `i` of `End₀` as a matrix pair.
    pub fn basis0(&self, i: usize) -> (RationalMatrix, RationalMatrix) {
        let (v0, v1) = (self.space.dim0, self.space.dim1);
        let b = &self.end0.basis()[i];
        (unflatten_matrix(&b[..v0 * v0], v0, v0), unflatten_matrix(&b[v0 * v0..], v1, v1))
    }

    pub fn dim0(&self) -> usize {
        self.end0.dim()
    }
}

pub fn end_algebra(space: &TwoTermSpace) -> EndAlgebra {
    let (v0, v1) = (space.dim0, space.dim1);
    let nvar = v0 * v0 + v1 * v1;
    // constraint X₀∂ − ∂X₁ = 0, one row per entry of a v0×v1 matrix
    let mut cons = RationalMatrix::zeros(v0 * v1, nvar);
    for i in 0..v0 {
        for j in 0..v1 {
            let row = i * v1 + j;
            for k in 0..v0 {
                // (X₀∂)_{ij} = Σ_k X₀[i,k] ∂[k,j]
                cons.add_at(row, i * v0 + k, space.diff.get(k, j));
            }
            for k in 0..v1 {
                // (∂X₁)_{ij} = Σ_k ∂[i,k] X₁[k,j]
                cons.add_at(row, v0 * v0 + k * v1 + j, &-space.diff.get(i, k).clone());
            }
        }
    }
    let end0 = Subspace::span(nvar, &kernel_basis(&cons));
    let e = EndAlgebra { space: space.clone(), algebra: Lie2Algebra::abelian(TwoTermSpace::plain(0, 0)), end0 };
    let k0 = e.dim0();
    let k1 = v0 * v1;
    let basis0: Vec<_> = (0..k0).map(|i| e.basis0(i)).collect();
    let basis1: Vec<RationalMatrix> = (0..k1)
        .map(|i| unflatten_matrix(&crate::ratlin::unit_vec(k1, i), v1, v0))
        .collect();
    let coords = |x0: &RationalMatrix, x1: &RationalMatrix| e.coords0(x0, x1).expect("End₀ is closed");
    let mut diff = RationalMatrix::zeros(k0, k1);
    for (j, th) in basis1.iter().enumerate() {
        diff.set_column(j, &coords(&space.diff.mul(th), &th.mul(&space.diff)));
    }
    let tspace = TwoTermSpace::new(k0, k1, diff).expect("End shapes");
    let mut alg = Lie2Algebra::abelian(tspace);
    alg.l2_00 = MultiTensor::from_fn(2, 0, k0, k1, Target::V0, k0, |xs, _| {
        let (a0, a1) = &basis0[xs[0]];
        let (b0, b1) = &basis0[xs[1]];
        coords(&a0.mul(b0).sub(&b0.mul(a0)), &a1.mul(b1).sub(&b1.mul(a1)))
    });
    alg.l2_01 = MultiTensor::from_fn(1, 1, k0, k1, Target::V1, k1, |xs, as_| {
        let (x0, x1) = &basis0[xs[0]];
        let th = &basis1[as_[0]];
        flatten_matrix(&x1.mul(th).sub(&th.mul(x0)))
    });
    EndAlgebra { algebra: alg, ..e }
}

/// Name of the check that `x▷` commutes with `∂`.
pub const ACTION_IN_END0: &str = "action lands in End₀ (x▷ commutes with ∂)";

/// Assembles `φ : g → End(V)` and checks it is a homomorphism.
pub fn check_action(m: &Lie2Module) -> Verdict {
    let mut v = Verdict::new();
    let e = end_algebra(&m.space);
    let g = &m.algebra;
    let (n0, n1) = g.dims();
    let mut cols = Vec::with_capacity(n0);
    let mut bad = None;
    for x in 0..n0 {
        match e.coords0(&m.act00[x], &m.act01[x]) {
            Some(c) => cols.push(c),
            None => {
                bad.get_or_insert(x);
                cols.push(zero_vec(e.dim0()));
            }
        }
    }
    v.expect(ACTION_IN_END0, bad.is_none(), || format!("x{}", bad.unwrap_or(0)));
    if bad.is_some() {
        return v;
    }
    let m0 = RationalMatrix::from_columns(&cols, e.dim0());
    let c1: Vec<QVec> = m.act10.iter().map(flatten_matrix).collect();
    let m1 = RationalMatrix::from_columns(&c1, m.v0() * m.v1());
    let phi2 = m.act2_tensor();
    let phi2 = MultiTensor::from_coeffs(2, 0, n0, n1, Target::V1, phi2.coeffs().clone())
        .expect("act2 shape");
    let hom = Lie2Hom::new(g.clone(), e.algebra.clone(), GradedMap::new(m0, m1), phi2)
        .expect("assembled action shapes");
    v.absorb("", check_hom(&hom));
    v
}

/// `ad(x) = [x, ·]`, `ad₂(y, z) = −l₃(y, z, ·)`.
pub fn adjoint_module(g: &Lie2Algebra) -> Lie2Module {
    let (n0, n1) = g.dims();
    let act00 = (0..n0).map(|x| g.ad00(&g.e0(x))).collect();
    let act01 = (0..n0).map(|x| g.ad01(&g.e0(x))).collect();
    let act10 = (0..n1).map(|a| g.ad10(&g.e1(a))).collect();
    let act2 = BasisIndexer::get(n0, 2, true)
        .tuples()
        .iter()
        .map(|t| {
            let cols: Vec<QVec> = (0..n0)
                .map(|w| {
                    g.l3.eval_basis(&[t[0], t[1], w], &[]).into_iter().map(|c| -c).collect()
                })
                .collect();
            RationalMatrix::from_columns(&cols, n1)
        })
        .collect();
    Lie2Module::new(g.clone(), g.space.clone(), act00, act01, act10, act2).expect("adjoint shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie2core::check_lie2;
    use crate::ratlin::q;

    #[test]
    fn end_dimensions() {
        let e = end_algebra(&TwoTermSpace::plain(1, 1));
        assert_eq!(e.algebra.dims(), (2, 1));
        assert!(check_lie2(&e.algebra).passed());
        let e = end_algebra(&TwoTermSpace::plain(1, 0));
        assert_eq!(e.algebra.dims(), (1, 0));
        let id = TwoTermSpace::new(1, 1, RationalMatrix::from_ints(&[&[1]])).unwrap();
        let e = end_algebra(&id);
        assert_eq!(e.algebra.dims(), (1, 1));
        assert!(check_lie2(&e.algebra).passed());
    }

    fn modules() -> Vec<Lie2Module> {
        use crate::fixtures::*;
        use crate::lie2core::gauge_pullback;
        let mut out = vec![];
        for g in [aff1(), sl2(), skeletal_sl2(), strict_aff1(), skeletal_aff1(), heis()] {
            out.push(adjoint_module(&g));
            out.push(Lie2Module::trivial(g.clone(), identity_space()));
        }
        let g = strict_aff1();
        let mut p2 = MultiTensor::zero(2, 0, 2, 1, Target::V1, 1);
        p2.add_basis(&[0, 1], &[], &[q(1)]);
        let (h, _) = gauge_pullback(&g, &p2).unwrap();
        assert!(check_lie2(&h).passed());
        out.push(adjoint_module(&h));
        out
    }

    #[test]
    fn d_squared_vanishes() {
        for m in modules() {
            assert!(check_action(&m).passed(), "{}", check_action(&m));
            for n in -1..=3 {
                let a = coboundary(&m, n).unwrap();
                let b = coboundary(&m, n + 1).unwrap();
                assert!(b.mul(&a).is_zero(), "n={n} dims {:?}", m.algebra.dims());
            }
        }
    }

    #[test]
    fn closed_formulas_match_matrix() {
        use crate::ratlin::qf;
        for m in modules() {
            let l2 = cochain_space(&m, 2);
            let v: QVec = (0..l2.total).map(|i| qf((i * 7 % 5) as i64 - 2, 1 + (i % 3) as i64)).collect();
            let lam = Cochain::from_flat(&m, 2, &v).unwrap();
            let th = three_coboundary(&m, &lam).unwrap();
            assert_eq!(th, apply_coboundary(&m, &lam));
            assert_eq!(th.flatten(), coboundary(&m, 2).unwrap().mul_vec(&v));
            let l0 = cochain_space(&m, 0);
            let w: QVec = (0..l0.total).map(|i| qf(i as i64 + 1, 2)).collect();
            let c0 = Cochain::from_flat(&m, 0, &w).unwrap();
            let u = c0.get(0, 0, 0).coeffs().column(0);
            let theta = c0.get(1, 0, 1).coeffs().clone();
            let dp = one_coboundary(&m, &u, &theta);
            assert_eq!(dp.to_cochain(&m).unwrap(), apply_coboundary(&m, &c0));
            assert!(one_cocycle_residuals(&m, &dp).passed());
        }
    }

    #[test]
    fn adjoint_of_aff1_is_an_action() {
        let g = Lie2Algebra::from_lie_algebra(2, &[(0, 1, 1, q(1))]);
        assert!(check_action(&adjoint_module(&g)).passed());
    }
}
