//! The Lie algebra `C¹(g, V)` and the strict Lie 2-algebra `Der(g, V)`.

use crate::error::{Error, Result};
use crate::graded::{GradedMap, MultiTensor, Target, TwoTermSpace};
use crate::lie2core::Lie2Algebra;
use crate::ratlin::{
    axpy, image_basis, kernel_basis, neg_vec, q, quotient_basis, unit_vec, zero_vec, QVec, Rational,
    RationalMatrix, Subspace,
};
use crate::repcoh::{coboundary, cochain_space, one_coboundary, DerPair, Lie2Module};
use crate::report::{Tally, Verdict};

/// `σ : g₀ ∧ V₀ → g₁`, stored as `sigma[x] = σ(x, ·)` (an `n₁ × v₀` matrix).
pub type Sigma = Vec<RationalMatrix>;

pub fn zero_sigma(n0: usize, n1: usize, v0: usize) -> Sigma {
    vec![RationalMatrix::zeros(n1, v0); n0]
}

/// `σ(x, u)` for a vector `x`.
pub fn sigma_apply(sigma: &[RationalMatrix], x: &[Rational], u: &[Rational]) -> QVec {
    let rows = sigma.first().map_or(0, RationalMatrix::rows);
    let mut out = zero_vec(rows);
    for (s, c) in sigma.iter().zip(x) {
        if !num_traits::Zero::is_zero(c) {
            axpy(&mut out, c, &s.mul_vec(u));
        }
    }
    out
}

fn check_sigma_shape(m: &Lie2Module, phi: &GradedMap, sigma: &[RationalMatrix]) -> Result<()> {
    let (n0, n1) = m.algebra.dims();
    if phi.source_dims() != (m.v0(), m.v1()) || phi.target_dims() != (n0, n1) {
        return Err(Error::Shape("φ must map the module to the algebra".into()));
    }
    if sigma.len() != n0 || sigma.iter().any(|s| s.shape() != (n1, m.v0())) {
        return Err(Error::Shape("σ needs one n₁ × v₀ matrix per basis vector of g₀".into()));
    }
    Ok(())
}

/// The data `(V, φ, σ)` on which the bracket of `C¹(g, V)` depends.
#[derive(Clone, Debug)]
pub struct C1Data<'a> {
    pub module: &'a Lie2Module,
    pub phi: &'a GradedMap,
    pub sigma: &'a [RationalMatrix],
}

impl C1Data<'_> {
    /// `[X, Y]_φ = XφY − YφX`.
    pub fn lambda_bracket(&self, x: &GradedMap, y: &GradedMap) -> GradedMap {
        let p = self.phi;
        GradedMap::new(
            x.m0.mul(&p.m0).mul(&y.m0).sub(&y.m0.mul(&p.m0).mul(&x.m0)),
            x.m1.mul(&p.m1).mul(&y.m1).sub(&y.m1.mul(&p.m1).mul(&x.m1)),
        )
    }

    /// `(X▷ξ)(x,y) = X₁φ₁ξ(x,y) − ξ(φ₀X₀x, y) − ξ(x, φ₀X₀y)`.
    pub fn act(&self, x: &GradedMap, xi: &MultiTensor) -> MultiTensor {
        let g = &self.module.algebra;
        let (n0, n1) = g.dims();
        let x1p = x.m1.mul(&self.phi.m1);
        let px = self.phi.m0.mul(&x.m0);
        MultiTensor::from_fn(2, 0, n0, n1, Target::V1, self.module.v1(), |xs, _| {
            let (a, b) = (xs[0], xs[1]);
            let mut r = x1p.mul_vec(&xi.eval_basis(&[a, b], &[]));
            axpy(&mut r, &q(-1), &xi.eval(&[&px.column(a), &g.e0(b)], &[]));
            axpy(&mut r, &q(-1), &xi.eval(&[&g.e0(a), &px.column(b)], &[]));
            r
        })
    }

    /// `ω^σ(X,Y)(x,y) = Xσ(Yx,y) + Xσ(x,Yy) − Yσ(Xx,y) − Yσ(x,Xy)`, with `σ(u,y) = −σ(y,u)`.
    pub fn omega(&self, x: &GradedMap, y: &GradedMap) -> MultiTensor {
        let g = &self.module.algebra;
        let (n0, n1) = g.dims();
        let s = self.sigma;
        MultiTensor::from_fn(2, 0, n0, n1, Target::V1, self.module.v1(), |xs, _| {
            let (a, b) = (xs[0], xs[1]);
            let half = |p: &GradedMap, r: &GradedMap| {
                let mut w = neg_vec(&s[b].mul_vec(&r.m0.column(a)));
                axpy(&mut w, &q(1), &s[a].mul_vec(&r.m0.column(b)));
                p.m1.mul_vec(&w)
            };
            let mut out = half(x, y);
            axpy(&mut out, &q(-1), &half(y, x));
            out
        })
    }

    /// `{X + ξ, Y + η} = [X,Y]_φ + X▷η − Y▷ξ + ω^σ(X,Y)`.
    pub fn bracket(&self, a: &DerPair, b: &DerPair) -> DerPair {
        let lx = self.act(&a.x, &b.lx).sub(&self.act(&b.x, &a.lx)).add(&self.omega(&a.x, &b.x));
        DerPair { x: self.lambda_bracket(&a.x, &b.x), lx }
    }

    /// `{X + l_X, Θ} = X₁φ₁Θ − Θφ₀X₀`.
    pub fn mixed(&self, a: &DerPair, theta: &RationalMatrix) -> RationalMatrix {
        a.x.m1.mul(&self.phi.m1).mul(theta).sub(&theta.mul(&self.phi.m0).mul(&a.x.m0))
    }

    /// `−D(Θ)` for `Θ : g₀ → V₁`.
    pub fn minus_d(&self, theta: &RationalMatrix) -> DerPair {
        one_coboundary(self.module, &zero_vec(self.module.v0()), theta).neg()
    }

    /// `−D(u)` for `u ∈ V₀`.
    pub fn minus_d0(&self, u: &[Rational]) -> DerPair {
        let (n0, _) = self.module.algebra.dims();
        one_coboundary(self.module, u, &RationalMatrix::zeros(self.module.v1(), n0)).neg()
    }
}

/// Name of the hypothesis of the `C¹` bracket.
pub const SIGMA_SYMMETRY: &str = "σ(φ₀u, v) = σ(u, φ₀v)";

pub const C1_CHECKS: [&str; 3] = [
    "Λ(g,V) acts on Hom(Λ²g₀,V₁) as a representation",
    "ω^σ is a 2-cocycle",
    "C¹ bracket satisfies the Jacobi identity",
];

fn sigma_symmetry(m: &Lie2Module, phi: &GradedMap, sigma: &[RationalMatrix]) -> Verdict {
    let mut t = Tally::new();
    for u in 0..m.v0() {
        for v in 0..m.v0() {
            let lhs = sigma_apply(sigma, &phi.m0.column(u), &unit_vec(m.v0(), v));
            let rhs = neg_vec(&sigma_apply(sigma, &phi.m0.column(v), &unit_vec(m.v0(), u)));
            t.case(lhs == rhs, || format!("(u{u}, u{v})"));
        }
    }
    let mut out = Verdict::new();
    t.into_verdict(&mut out, SIGMA_SYMMETRY);
    out
}

fn c1_basis(m: &Lie2Module) -> Vec<DerPair> {
    let n = cochain_space(m, 1).total;
    (0..n).map(|i| DerPair::from_flat(m, &unit_vec(n, i)).expect("unit cochain")).collect()
}

/// `C¹(g, V)` as a Lie algebra, with the residual checks of its construction.
pub fn c1_lie_algebra(m: &Lie2Module, phi: &GradedMap, sigma: &[RationalMatrix]) -> Result<(Lie2Algebra, Verdict)> {
    check_sigma_shape(m, phi, sigma)?;
    let hyp = sigma_symmetry(m, phi, sigma);
    if !hyp.passed() {
        let w = hyp.first_failure().and_then(|c| c.witness.clone()).unwrap_or_default();
        return Err(Error::refused(SIGMA_SYMMETRY, w));
    }
    let data = C1Data { module: m, phi, sigma };
    let basis = c1_basis(m);
    let n = basis.len();
    let mut alg = Lie2Algebra::abelian(TwoTermSpace::plain(n, 0));
    alg.l2_00 = MultiTensor::from_fn(2, 0, n, 0, Target::V0, n, |xs, _| {
        data.bracket(&basis[xs[0]], &basis[xs[1]]).flatten(m)
    });

    let mut v = Verdict::new();
    let lam: Vec<&GradedMap> = basis.iter().filter(|b| b.lx.is_zero()).map(|b| &b.x).collect();
    let xis: Vec<&MultiTensor> = basis.iter().filter(|b| b.x.m0.is_zero() && b.x.m1.is_zero()).map(|b| &b.lx).collect();

    let mut t = Tally::new();
    for (i, x) in lam.iter().enumerate() {
        for (j, y) in lam.iter().enumerate().skip(i + 1) {
            for (k, xi) in xis.iter().enumerate() {
                let lhs = data.act(&data.lambda_bracket(y, x), xi);
                let rhs = data.act(y, &data.act(x, xi)).sub(&data.act(x, &data.act(y, xi)));
                t.case(lhs == rhs, || format!("(X{i}, X{j}, ξ{k})"));
            }
        }
    }
    t.into_verdict(&mut v, C1_CHECKS[0]);

    let mut t = Tally::new();
    let br = |a: &GradedMap, b: &GradedMap| data.lambda_bracket(a, b);
    for (i, x) in lam.iter().enumerate() {
        for (j, y) in lam.iter().enumerate().skip(i + 1) {
            for (k, z) in lam.iter().enumerate().skip(j + 1) {
                let w = data.act(x, &data.omega(y, z))
                    .sub(&data.act(y, &data.omega(x, z)))
                    .add(&data.act(z, &data.omega(x, y)))
                    .sub(&data.omega(&br(x, y), z))
                    .add(&data.omega(&br(x, z), y))
                    .sub(&data.omega(&br(y, z), x));
                t.case(w.is_zero(), || format!("(X{i}, X{j}, X{k})"));
            }
        }
    }
    t.into_verdict(&mut v, C1_CHECKS[1]);

    let mut t = Tally::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&basis[i], &basis[j], &basis[k]);
                let s = data
                    .bracket(a, &data.bracket(b, c))
                    .add(&data.bracket(b, &data.bracket(c, a)))
                    .add(&data.bracket(c, &data.bracket(a, b)));
                t.case(s.x.m0.is_zero() && s.x.m1.is_zero() && s.lx.is_zero(), || format!("(e{i}, e{j}, e{k})"));
            }
        }
    }
    t.into_verdict(&mut v, C1_CHECKS[2]);
    Ok((alg, v))
}

/// Column-major flattening of `Θ : g₀ → V₁`, matching the cochain layout.
pub fn theta_flat(theta: &RationalMatrix) -> QVec {
    theta.columns().into_iter().flatten().collect()
}

pub fn theta_from_flat(v: &[Rational], v1: usize, n0: usize) -> RationalMatrix {
    let cols: Vec<QVec> = (0..n0).map(|x| v[x * v1..(x + 1) * v1].to_vec()).collect();
    RationalMatrix::from_columns(&cols, v1)
}

/// `Der(g, V)`: `Hom(g₀, V₁) --(−D)--> Der₀(g, V)` with the bracket of `C¹`.
#[derive(Clone, Debug)]
pub struct DerivationAlgebra {
    pub module: Lie2Module,
    pub phi: GradedMap,
    pub sigma: Sigma,
    pub algebra: Lie2Algebra,
    der0: Subspace,
}

impl DerivationAlgebra {
    pub fn data(&self) -> C1Data<'_> {
        C1Data { module: &self.module, phi: &self.phi, sigma: &self.sigma }
    }

    pub fn der0(&self) -> &Subspace {
        &self.der0
    }

    /// Basis element `i` of `Der₀`.
    pub fn element0(&self, i: usize) -> DerPair {
        DerPair::from_flat(&self.module, &self.der0.basis()[i]).expect("kernel vector")
    }

    /// Basis element `j` of `Der₁ = Hom(g₀, V₁)`.
    pub fn element1(&self, j: usize) -> RationalMatrix {
        let (n0, _) = self.module.algebra.dims();
        let v1 = self.module.v1();
        theta_from_flat(&unit_vec(v1 * n0, j), v1, n0)
    }

    /// Coordinates in the `Der₀` basis, or `None` if not a 1-cocycle.
    pub fn coords0(&self, d: &DerPair) -> Option<QVec> {
        self.der0.coordinates(&d.flatten(&self.module))
    }

    pub fn vector0(&self, c: &[Rational]) -> DerPair {
        let mut v = zero_vec(self.der0.ambient());
        for (b, x) in self.der0.basis().iter().zip(c) {
            axpy(&mut v, x, b);
        }
        DerPair::from_flat(&self.module, &v).expect("cochain length")
    }
}

/// Builds `Der(g, V)` for the data `(V, φ, σ)`; `Der₀` is `ker D₁`.
pub fn derivation_algebra(m: &Lie2Module, phi: &GradedMap, sigma: &[RationalMatrix]) -> Result<DerivationAlgebra> {
    check_sigma_shape(m, phi, sigma)?;
    let (n0, _) = m.algebra.dims();
    let total = cochain_space(m, 1).total;
    let der0 = Subspace::span(total, &kernel_basis(&coboundary(m, 1)?));
    let mut out = DerivationAlgebra {
        module: m.clone(),
        phi: phi.clone(),
        sigma: sigma.to_vec(),
        algebra: Lie2Algebra::abelian(TwoTermSpace::plain(0, 0)),
        der0,
    };
    let k0 = out.der0.dim();
    let k1 = m.v1() * n0;
    let data = out.data();
    let b0: Vec<DerPair> = (0..k0).map(|i| out.element0(i)).collect();
    let b1: Vec<RationalMatrix> = (0..k1).map(|j| out.element1(j)).collect();
    let coords = |d: &DerPair| {
        out.coords0(d).ok_or_else(|| Error::refused("Der₀ is closed under the bracket", "bracket left the 1-cocycles"))
    };
    let mut diff = RationalMatrix::zeros(k0, k1);
    for (j, th) in b1.iter().enumerate() {
        diff.set_column(j, &coords(&data.minus_d(th))?);
    }
    let mut alg = Lie2Algebra::abelian(TwoTermSpace::new(k0, k1, diff)?);
    let mut l2_00 = MultiTensor::zero(2, 0, k0, k1, Target::V0, k0);
    for i in 0..k0 {
        for j in i + 1..k0 {
            l2_00.add_basis(&[i, j], &[], &coords(&data.bracket(&b0[i], &b0[j]))?);
        }
    }
    alg.l2_00 = l2_00;
    alg.l2_01 = MultiTensor::from_fn(1, 1, k0, k1, Target::V1, k1, |xs, as_| {
        theta_flat(&data.mixed(&b0[xs[0]], &b1[as_[0]]))
    });
    out.algebra = alg;
    Ok(out)
}

/// Names of the graded-derivation identities for `−D`.
pub const MINUS_D_DERIVATION: [&str; 2] = [
    "−D{X + l_X, Θ} = {X + l_X, −DΘ}",
    "{−DΘ, Θ′} = {Θ, −DΘ′}",
];

/// Residuals of the two identities saying `−D` is a graded derivation.
pub fn minus_d_derivation_residuals(der: &DerivationAlgebra) -> Verdict {
    let data = der.data();
    let k0 = der.der0.dim();
    let (n0, _) = der.module.algebra.dims();
    let k1 = der.module.v1() * n0;
    let mut v = Verdict::new();
    let mut t = Tally::new();
    for i in 0..k0 {
        let x = der.element0(i);
        for j in 0..k1 {
            let th = der.element1(j);
            let lhs = data.minus_d(&data.mixed(&x, &th));
            let rhs = data.bracket(&x, &data.minus_d(&th));
            t.case(lhs == rhs, || format!("(X{i}, Θ{j})"));
        }
    }
    t.into_verdict(&mut v, MINUS_D_DERIVATION[0]);
    let mut t = Tally::new();
    for i in 0..k1 {
        for j in 0..k1 {
            let (a, b) = (der.element1(i), der.element1(j));
            let lhs = data.mixed(&data.minus_d(&a), &b);
            // {Θ, Y} = −{Y, Θ}
            let rhs = data.mixed(&data.minus_d(&b), &a).neg();
            t.case(lhs == rhs, || format!("(Θ{i}, Θ{j})"));
        }
    }
    t.into_verdict(&mut v, MINUS_D_DERIVATION[1]);
    v
}

/// `H¹ = Der₀ / Inn₀` with the induced bracket.
#[derive(Clone, Debug)]
pub struct FirstCohomology {
    pub betti: usize,
    /// Representatives in `Der₀` coordinates.
    pub representatives: Vec<QVec>,
    /// Structure constants: `bracket[i][j]` is the class of `{r_i, r_j}`.
    pub bracket: Vec<Vec<QVec>>,
    /// `Inn₀` in `Der₀` coordinates.
    pub inner: Vec<QVec>,
}

impl FirstCohomology {
    /// The quotient Lie algebra as a Lie 2-algebra with `g₁ = 0`.
    pub fn lie_algebra(&self) -> Lie2Algebra {
        let n = self.betti;
        let mut g = Lie2Algebra::abelian(TwoTermSpace::plain(n, 0));
        g.l2_00 = MultiTensor::from_fn(2, 0, n, 0, Target::V0, n, |xs, _| self.bracket[xs[0]][xs[1]].clone());
        g
    }
}

pub const INNER_IDEAL: &str = "{X + l_X, −Dα} = −D(Xφα + l_X(φα,·) + Xσ(α,·))";

/// Residuals of the identity showing `Inn₀` is an ideal, on basis `X` and basis `α ∈ V₀`.
pub fn inner_ideal_residuals(der: &DerivationAlgebra) -> Verdict {
    let data = der.data();
    let m = &der.module;
    let (n0, _) = m.algebra.dims();
    let mut t = Tally::new();
    for i in 0..der.der0.dim() {
        let x = der.element0(i);
        for a in 0..m.v0() {
            let alpha = unit_vec(m.v0(), a);
            let lhs = data.bracket(&x, &data.minus_d0(&alpha));
            let pa = der.phi.m0.mul_vec(&alpha);
            let u = x.x.m0.mul_vec(&pa);
            let cols: Vec<QVec> = (0..n0)
                .map(|y| {
                    let ey = m.algebra.e0(y);
                    let mut c = x.lx.eval(&[&pa, &ey], &[]);
                    // σ(α, y) = −σ(y, α)
                    axpy(&mut c, &q(-1), &x.x.m1.mul_vec(&der.sigma[y].mul_vec(&alpha)));
                    c
                })
                .collect();
            let theta = RationalMatrix::from_columns(&cols, m.v1());
            let rhs = one_coboundary(m, &u, &theta).neg();
            t.case(lhs == rhs, || format!("(X{i}, α{a})"));
        }
    }
    let mut v = Verdict::new();
    t.into_verdict(&mut v, INNER_IDEAL);
    v
}

/// `H¹(g, V)` as a quotient Lie algebra, using the reduced echelon complement of `Inn₀`.
pub fn h1_lie_algebra(der: &DerivationAlgebra) -> Result<FirstCohomology> {
    let m = &der.module;
    let k0 = der.der0.dim();
    let d0 = coboundary(m, 0)?;
    let inner: Vec<QVec> = image_basis(&d0)
        .iter()
        .map(|v| {
            der.der0.coordinates(v).ok_or_else(|| Error::refused("D² = 0", "coboundary is not a cocycle"))
        })
        .collect::<Result<_>>()?;
    let comp = quotient_basis(&inner, k0)?;
    h1_with_complement(der, inner, comp.basis)
}

/// Same as [`h1_lie_algebra`] with caller-chosen representatives.
pub fn h1_with_complement(der: &DerivationAlgebra, inner: Vec<QVec>, reps: Vec<QVec>) -> Result<FirstCohomology> {
    let k0 = der.der0.dim();
    let data = der.data();
    let betti = reps.len();
    if betti + inner.len() != k0 {
        return Err(Error::Shape("representatives do not complement Inn₀".into()));
    }
    let mut cols = reps.clone();
    cols.extend(inner.iter().cloned());
    let basis = RationalMatrix::from_columns(&cols, k0);
    let project = |c: &QVec| -> Result<QVec> {
        let s = crate::ratlin::solve(&basis, c)?;
        Ok(s[..betti].to_vec())
    };
    let elems: Vec<DerPair> = reps.iter().map(|r| der.vector0(r)).collect();
    let mut bracket = vec![vec![zero_vec(betti); betti]; betti];
    for i in 0..betti {
        for j in 0..betti {
            let b = data.bracket(&elems[i], &elems[j]);
            let c = der.coords0(&b).ok_or_else(|| Error::refused("Der₀ is closed under the bracket", format!("(r{i}, r{j})")))?;
            bracket[i][j] = project(&c)?;
        }
    }
    Ok(FirstCohomology { betti, representatives: reps, bracket, inner })
}
