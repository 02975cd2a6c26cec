//! Closed formulas for low-degree cocycles and coboundaries.

use crate::error::{Error, Result};
use crate::graded::{unshuffles, GradedMap, MultiTensor, Target};
use crate::lie2core::Lie2Algebra;
use crate::ratlin::{add_vec, axpy, q, sub_vec, unit_vec, zero_vec, QVec, Rational, RationalMatrix};
use crate::report::{Tally, Verdict};

use super::cochain::{Block, Cochain};
use super::{adjoint_module, Lie2Module};

/// A degree-1 cochain `X + l_X` with `X = (X₀, X₁)` and `l_X : Λ²g₀ → V₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerPair {
    pub x: GradedMap,
    pub lx: MultiTensor,
}

impl DerPair {
    pub fn zero(m: &Lie2Module) -> Self {
        let (n0, n1) = m.algebra.dims();
        Self {
            x: GradedMap::zero((n0, n1), (m.v0(), m.v1())),
            lx: MultiTensor::zero(2, 0, n0, n1, Target::V1, m.v1()),
        }
    }

    pub fn to_cochain(&self, m: &Lie2Module) -> Result<Cochain> {
        let (n0, n1) = m.algebra.dims();
        let x0 = MultiTensor::from_coeffs(1, 0, n0, n1, Target::V0, self.x.m0.clone())?;
        let x1 = MultiTensor::from_coeffs(0, 1, n0, n1, Target::V1, self.x.m1.clone())?;
        Cochain::from_blocks(
            m,
            1,
            vec![(Block::new(1, 0, 0), x0), (Block::new(0, 1, 1), x1), (Block::new(2, 0, 1), self.lx.clone())],
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { x: self.x.add(&o.x), lx: self.lx.add(&o.lx) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { x: self.x.sub(&o.x), lx: self.lx.sub(&o.lx) }
    }

    pub fn scale(&self, a: &Rational) -> Self {
        Self { x: GradedMap::new(self.x.m0.scale(a), self.x.m1.scale(a)), lx: self.lx.scale(a) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    /// Coordinates in the flattened degree-1 cochain layout.
    pub fn flatten(&self, m: &Lie2Module) -> QVec {
        self.to_cochain(m).expect("derivation pair shape").flatten()
    }

    pub fn from_flat(m: &Lie2Module, v: &[Rational]) -> Result<Self> {
        Self::from_cochain(&Cochain::from_flat(m, 1, v)?)
    }

    pub fn from_cochain(c: &Cochain) -> Result<Self> {
        if c.degree != 1 {
            return Err(Error::Shape(format!("expected a degree-1 cochain, got degree {}", c.degree)));
        }
        Ok(Self {
            x: GradedMap::new(c.get(1, 0, 0).coeffs().clone(), c.get(0, 1, 1).coeffs().clone()),
            lx: c.get(2, 0, 1).clone(),
        })
    }
}

/// Names of the four 1-cocycle equations, in order.
pub const COCYCLE_EQUATIONS: [&str; 4] = [
    "1-cocycle equation X₀d = ∂X₁",
    "1-cocycle equation ∂l_X(x,y) = X[x,y] + y▷Xx − x▷Xy",
    "1-cocycle equation l_X(x,da) = X[x,a] + a▷Xx − x▷Xa",
    "1-cocycle equation X l₃ = l_X(x,[y,z]) + x▷l_X(y,z) − (y,z)▷Xx + c.p.",
];

/// Residuals of the four 1-cocycle equations on every basis tuple.
pub fn one_cocycle_residuals(m: &Lie2Module, d: &DerPair) -> Verdict {
    let g = &m.algebra;
    let (n0, n1) = g.dims();
    let x0 = &d.x.m0;
    let x1 = &d.x.m1;
    let mut v = Verdict::new();

    let mut t = Tally::new();
    for a in 0..n1 {
        let lhs = x0.mul_vec(&g.space.diff.column(a));
        let rhs = m.space.diff.mul_vec(&x1.column(a));
        t.case(lhs == rhs, || format!("a{a}"));
    }
    t.into_verdict(&mut v, COCYCLE_EQUATIONS[0]);

    let mut t = Tally::new();
    for x in 0..n0 {
        for y in x + 1..n0 {
            let lhs = m.space.diff.mul_vec(&d.lx.eval_basis(&[x, y], &[]));
            let mut rhs = x0.mul_vec(&g.l2_00.eval_basis(&[x, y], &[]));
            axpy(&mut rhs, &q(1), &m.act00[y].mul_vec(&x0.column(x)));
            axpy(&mut rhs, &q(-1), &m.act00[x].mul_vec(&x0.column(y)));
            t.case(lhs == rhs, || format!("(x{x}, x{y})"));
        }
    }
    t.into_verdict(&mut v, COCYCLE_EQUATIONS[1]);

    let mut t = Tally::new();
    for x in 0..n0 {
        for a in 0..n1 {
            let da = g.space.diff.column(a);
            let lhs = d.lx.eval(&[&unit_vec(n0, x), &da], &[]);
            let mut rhs = x1.mul_vec(&g.l2_01.eval_basis(&[x], &[a]));
            axpy(&mut rhs, &q(1), &m.act10[a].mul_vec(&x0.column(x)));
            axpy(&mut rhs, &q(-1), &m.act01[x].mul_vec(&x1.column(a)));
            t.case(lhs == rhs, || format!("(x{x}, a{a})"));
        }
    }
    t.into_verdict(&mut v, COCYCLE_EQUATIONS[2]);

    let mut t = Tally::new();
    for x in 0..n0 {
        for y in x + 1..n0 {
            for z in y + 1..n0 {
                let lhs = x1.mul_vec(&g.l3.eval_basis(&[x, y, z], &[]));
                let mut rhs = zero_vec(m.v1());
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let br = g.l2_00.eval_basis(&[b, c], &[]);
                    axpy(&mut rhs, &q(1), &d.lx.eval(&[&unit_vec(n0, a), &br], &[]));
                    axpy(&mut rhs, &q(1), &m.act01[a].mul_vec(&d.lx.eval_basis(&[b, c], &[])));
                    axpy(&mut rhs, &q(-1), &m.rho2_basis(b, c).mul_vec(&x0.column(a)));
                }
                t.case(lhs == rhs, || format!("(x{x}, x{y}, x{z})"));
            }
        }
    }
    t.into_verdict(&mut v, COCYCLE_EQUATIONS[3]);
    v
}

/// `D(u + Θ)` for `u ∈ V₀`, `Θ : g₀ → V₁`, by the closed formulas.
pub fn one_coboundary(m: &Lie2Module, u: &[Rational], theta: &RationalMatrix) -> DerPair {
    let g = &m.algebra;
    let (n0, n1) = g.dims();
    let x0_cols: Vec<QVec> = (0..n0)
        .map(|x| sub_vec(&m.act00[x].mul_vec(u), &m.space.diff.mul_vec(&theta.column(x))))
        .collect();
    let x1_cols: Vec<QVec> = (0..n1)
        .map(|a| sub_vec(&m.act10[a].mul_vec(u), &theta.mul_vec(&g.space.diff.column(a))))
        .collect();
    let lx = MultiTensor::from_fn(2, 0, n0, n1, Target::V1, m.v1(), |xs, _| {
        let (x, y) = (xs[0], xs[1]);
        let mut r = m.rho2_basis(x, y).mul_vec(u);
        axpy(&mut r, &q(1), &m.act01[x].mul_vec(&theta.column(y)));
        axpy(&mut r, &q(-1), &m.act01[y].mul_vec(&theta.column(x)));
        axpy(&mut r, &q(-1), &theta.mul_vec(&g.l2_00.eval_basis(&[x, y], &[])));
        r
    });
    DerPair {
        x: GradedMap::new(
            RationalMatrix::from_columns(&x0_cols, m.v0()),
            RationalMatrix::from_columns(&x1_cols, m.v1()),
        ),
        lx,
    }
}

/// `θ = Dλ` for a degree-2 cochain, component by component.
pub fn three_coboundary(m: &Lie2Module, lambda: &Cochain) -> Result<Cochain> {
    if lambda.degree != 2 {
        return Err(Error::Shape(format!("expected a degree-2 cochain, got degree {}", lambda.degree)));
    }
    let g = &m.algebra;
    let (n0, n1) = g.dims();
    let (v0, v1) = (m.v0(), m.v1());
    let l0 = lambda.get(0, 1, 0).coeffs();
    let l1 = lambda.get(2, 0, 0);
    let l2 = lambda.get(1, 1, 1);
    let l3t = lambda.get(3, 0, 1);
    let e = |i: usize| unit_vec(n0, i);
    let l2v = |x: &[Rational], a: &[Rational]| l2.eval(&[x], &[a]);

    let theta0 = MultiTensor::from_fn(1, 1, n0, n1, Target::V0, v0, |xs, as_| {
        let (x, a) = (xs[0], as_[0]);
        let mut r = m.act00[x].mul_vec(&l0.column(a));
        axpy(&mut r, &q(-1), &l0.mul_vec(&g.l2_01.eval_basis(&[x], &[a])));
        axpy(&mut r, &q(1), &l1.eval(&[&e(x), &g.space.diff.column(a)], &[]));
        axpy(&mut r, &q(-1), &m.space.diff.mul_vec(&l2.eval_basis(&[x], &[a])));
        r
    });
    let theta1 = MultiTensor::from_fn(0, 2, n0, n1, Target::V1, v1, |_, as_| {
        let (a, b) = (as_[0], as_[1]);
        let mut r = m.act10[a].mul_vec(&l0.column(b));
        axpy(&mut r, &q(1), &m.act10[b].mul_vec(&l0.column(a)));
        axpy(&mut r, &q(-1), &l2v(&g.space.diff.column(a), &unit_vec(n1, b)));
        axpy(&mut r, &q(-1), &l2v(&g.space.diff.column(b), &unit_vec(n1, a)));
        r
    });
    let theta2 = MultiTensor::from_fn(3, 0, n0, n1, Target::V0, v0, |xs, _| {
        let (x, y, z) = (xs[0], xs[1], xs[2]);
        let mut r = l0.mul_vec(&g.l3.eval_basis(&[x, y, z], &[]));
        r = r.into_iter().map(|c| -c).collect();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            axpy(&mut r, &q(1), &m.act00[a].mul_vec(&l1.eval_basis(&[b, c], &[])));
            axpy(&mut r, &q(-1), &l1.eval(&[&g.l2_00.eval_basis(&[a, b], &[]), &e(c)], &[]));
        }
        axpy(&mut r, &q(-1), &m.space.diff.mul_vec(&l3t.eval_basis(&[x, y, z], &[])));
        r
    });
    let theta3 = MultiTensor::from_fn(2, 1, n0, n1, Target::V1, v1, |xs, as_| {
        let (x, y, a) = (xs[0], xs[1], as_[0]);
        let mut r = m.rho2_basis(x, y).mul_vec(&l0.column(a));
        axpy(&mut r, &q(1), &m.act10[a].mul_vec(&l1.eval_basis(&[x, y], &[])));
        axpy(&mut r, &q(1), &m.act01[x].mul_vec(&l2.eval_basis(&[y], &[a])));
        axpy(&mut r, &q(-1), &m.act01[y].mul_vec(&l2.eval_basis(&[x], &[a])));
        axpy(&mut r, &q(-1), &l2v(&g.l2_00.eval_basis(&[x, y], &[]), &unit_vec(n1, a)));
        axpy(&mut r, &q(-1), &l2v(&e(y), &g.l2_01.eval_basis(&[x], &[a])));
        axpy(&mut r, &q(1), &l2v(&e(x), &g.l2_01.eval_basis(&[y], &[a])));
        axpy(&mut r, &q(-1), &l3t.eval(&[&e(x), &e(y), &g.space.diff.column(a)], &[]));
        r
    });
    let theta4 = MultiTensor::from_fn(4, 0, n0, n1, Target::V1, v1, |xs, _| {
        let mut r = zero_vec(v1);
        for (perm, s) in unshuffles(2, 4) {
            let val = l1.eval_basis(&[xs[perm[2]], xs[perm[3]]], &[]);
            let w = m.rho2_basis(xs[perm[0]], xs[perm[1]]).mul_vec(&val);
            axpy(&mut r, &q(s as i64), &w);
        }
        for (perm, s) in unshuffles(3, 4) {
            let l3 = g.l3.eval_basis(&[xs[perm[0]], xs[perm[1]], xs[perm[2]]], &[]);
            axpy(&mut r, &q(-(s as i64)), &l2v(&e(xs[perm[3]]), &l3));
        }
        for i in 0..4 {
            let rest: Vec<usize> = (0..4).filter(|&k| k != i).map(|k| xs[k]).collect();
            let w = m.act01[xs[i]].mul_vec(&l3t.eval_basis(&rest, &[]));
            axpy(&mut r, &q(if i % 2 == 0 { 1 } else { -1 }), &w);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let br = g.l2_00.eval_basis(&[xs[i], xs[j]], &[]);
                let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).map(|k| xs[k]).collect();
                let w = l3t.eval(&[&br, &e(rest[0]), &e(rest[1])], &[]);
                axpy(&mut r, &q(if (i + j) % 2 == 0 { 1 } else { -1 }), &w);
            }
        }
        r
    });
    Cochain::from_blocks(
        m,
        3,
        vec![
            (Block::new(1, 1, 0), theta0),
            (Block::new(0, 2, 1), theta1),
            (Block::new(3, 0, 0), theta2),
            (Block::new(2, 1, 1), theta3),
            (Block::new(4, 0, 1), theta4),
        ],
    )
}

/// Names of the checks in [`skeletal_derivation_check`].
pub const SKELETAL_CHECKS: [&str; 3] = [
    "X₀ is a derivation of g₀",
    "X₁ intertwines the g₀-action on g₁",
    "Lie algebra coboundary of l_X equals [X, l₃]",
];

/// For skeletal `g`: `X + l_X` is a derivation iff `X ∈ Der(g₀ ⋉ g₁)` and
/// `𝔇l_X = [X, l₃]`, with `𝔇` the Chevalley–Eilenberg coboundary of `g₀`
/// with values in `g₁`.
pub fn skeletal_derivation_check(g: &Lie2Algebra, d: &DerPair) -> Result<Verdict> {
    if !g.is_skeletal() {
        return Err(Error::refused("skeletal (d = 0)", "differential is nonzero"));
    }
    let (n0, n1) = g.dims();
    let x0 = &d.x.m0;
    let x1 = &d.x.m1;
    if x0.shape() != (n0, n0) || x1.shape() != (n1, n1) || d.lx.target_dim() != n1 {
        return Err(Error::Shape("derivation pair does not match the algebra".into()));
    }
    let br = |x: &[Rational], y: &[Rational]| g.br00(x, y);
    let act = |x: &[Rational], u: &[Rational]| g.br01(x, u);
    let mut v = Verdict::new();

    let mut t = Tally::new();
    for x in 0..n0 {
        for y in x + 1..n0 {
            let (ex, ey) = (g.e0(x), g.e0(y));
            let lhs = x0.mul_vec(&br(&ex, &ey));
            let rhs = add_vec(&br(&x0.column(x), &ey), &br(&ex, &x0.column(y)));
            t.case(lhs == rhs, || format!("(x{x}, x{y})"));
        }
    }
    t.into_verdict(&mut v, SKELETAL_CHECKS[0]);

    let mut t = Tally::new();
    for x in 0..n0 {
        for a in 0..n1 {
            let (ex, ea) = (g.e0(x), g.e1(a));
            let lhs = x1.mul_vec(&act(&ex, &ea));
            let rhs = add_vec(&act(&x0.column(x), &ea), &act(&ex, &x1.column(a)));
            t.case(lhs == rhs, || format!("(x{x}, a{a})"));
        }
    }
    t.into_verdict(&mut v, SKELETAL_CHECKS[1]);

    let mut t = Tally::new();
    let lx = |x: &[Rational], y: &[Rational]| d.lx.eval(&[x, y], &[]);
    for x in 0..n0 {
        for y in x + 1..n0 {
            for z in y + 1..n0 {
                let (ex, ey, ez) = (g.e0(x), g.e0(y), g.e0(z));
                // 𝔇l(x,y,z) = x▷l(y,z) − y▷l(x,z) + z▷l(x,y) − l([x,y],z) + l([x,z],y) − l([y,z],x)
                let mut lhs = act(&ex, &lx(&ey, &ez));
                axpy(&mut lhs, &q(-1), &act(&ey, &lx(&ex, &ez)));
                axpy(&mut lhs, &q(1), &act(&ez, &lx(&ex, &ey)));
                axpy(&mut lhs, &q(-1), &lx(&br(&ex, &ey), &ez));
                axpy(&mut lhs, &q(1), &lx(&br(&ex, &ez), &ey));
                axpy(&mut lhs, &q(-1), &lx(&br(&ey, &ez), &ex));
                let mut rhs = x1.mul_vec(&g.l3v(&ex, &ey, &ez));
                axpy(&mut rhs, &q(-1), &g.l3v(&x0.column(x), &ey, &ez));
                axpy(&mut rhs, &q(-1), &g.l3v(&ex, &x0.column(y), &ez));
                axpy(&mut rhs, &q(-1), &g.l3v(&ex, &ey, &x0.column(z)));
                t.case(lhs == rhs, || format!("(x{x}, x{y}, x{z})"));
            }
        }
    }
    t.into_verdict(&mut v, SKELETAL_CHECKS[2]);
    Ok(v)
}

/// Degree-0 derivations of `g` as 1-cocycles of the adjoint module.
pub fn is_derivation(g: &Lie2Algebra, d: &DerPair) -> bool {
    one_cocycle_residuals(&adjoint_module(g), d).passed()
}
