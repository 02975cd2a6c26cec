//! Abelian extensions `h ⊕_λ Q` and the spliced crossed module.

use crate::crossmod::{check_crossed_module, crossed_product, refuse_first, zero_sigma, CrossedModule, DerivAction};
use crate::error::{Error, Result};
use crate::graded::{GradedMap, MultiTensor, Target, TwoTermSpace};
use crate::lie2core::{check_hom, check_lie2, Lie2Algebra, Lie2Hom};
use crate::ratlin::{kernel_basis, rank, solve, zero_vec, QVec, RationalMatrix, Subspace};
use crate::repcoh::{apply_coboundary, coboundary, cochain_space, Block, Cochain, Lie2Module};
use crate::report::Verdict;

use super::{column_space, is_module_map};

/// `h ⊕_λ Q` with its inclusion and projection.
#[derive(Clone, Debug)]
pub struct AbelianExtension {
    pub algebra: Lie2Algebra,
    /// `Q`, as an abelian Lie 2-algebra, into the extension.
    pub inclusion: Lie2Hom,
    pub projection: Lie2Hom,
}

fn stack(top: &RationalMatrix, bottom: &RationalMatrix) -> RationalMatrix {
    top.vstack(bottom)
}

fn lift(v: &[crate::ratlin::Rational], total: usize, off: usize) -> QVec {
    let mut w = zero_vec(total);
    for (i, c) in v.iter().enumerate() {
        w[off + i] = c.clone();
    }
    w
}

/// The structure on `h ⊕ Q` (h coordinates first) twisted by `λ`, without
/// checking anything; `check_lie2` on it is the cocycle condition for `λ`.
pub fn twisted_sum(q: &Lie2Module, lambda: &Cochain) -> Result<Lie2Algebra> {
    if lambda.degree != 2 {
        return Err(Error::Shape("λ must be a degree-2 cochain".into()));
    }
    let h = &q.algebra;
    let (n0, n1) = h.dims();
    let (v0, v1) = (q.v0(), q.v1());
    let (t0, t1) = (n0 + v0, n1 + v1);
    let qab = Lie2Algebra::abelian(q.space.clone());
    let action = DerivAction { module: q.clone(), lphi0: DerivAction::trivial(h, &qab).lphi0 };
    let mut e = crossed_product(h, &qab, &action)?;

    let l0 = lambda.get(0, 1, 0).coeffs();
    let twist = RationalMatrix::zeros(n0, t1).vstack(&l0.hstack(&RationalMatrix::zeros(v0, v1)));
    let space = TwoTermSpace::new(t0, t1, e.space.diff.add(&twist))?;
    let (l1, l2, l3) = (lambda.get(2, 0, 0), lambda.get(1, 1, 1), lambda.get(3, 0, 1));
    for (xs, _) in l1.basis_tuples() {
        e.l2_00.add_basis(&xs, &[], &lift(&l1.eval_basis(&xs, &[]), t0, n0));
    }
    for (xs, as_) in l2.basis_tuples() {
        e.l2_01.add_basis(&xs, &as_, &lift(&l2.eval_basis(&xs, &as_), t1, n1));
    }
    for (xs, _) in l3.basis_tuples() {
        e.l3.add_basis(&xs, &[], &lift(&l3.eval_basis(&xs, &[]), t1, n1));
    }
    Lie2Algebra::new(space, e.l2_00, e.l2_01, e.l3)
}

/// The abelian extension `0 → Q → h ⊕_λ Q → h → 0` of a 2-cocycle `λ`.
pub fn abelian_extension(q: &Lie2Module, lambda: &Cochain) -> Result<AbelianExtension> {
    let d = apply_coboundary(q, lambda);
    if let Some(w) = d.first_nonzero() {
        return Err(Error::refused("D^h λ = 0", w));
    }
    let algebra = twisted_sum(q, lambda)?;
    refuse_first(&check_lie2(&algebra))?;
    let h = &q.algebra;
    let (n0, n1) = h.dims();
    let (v0, v1) = (q.v0(), q.v1());
    let qab = Lie2Algebra::abelian(q.space.clone());
    let inc = GradedMap::new(
        stack(&RationalMatrix::zeros(n0, v0), &RationalMatrix::identity(v0)),
        stack(&RationalMatrix::zeros(n1, v1), &RationalMatrix::identity(v1)),
    );
    let proj = GradedMap::new(
        RationalMatrix::identity(n0).hstack(&RationalMatrix::zeros(n0, v0)),
        RationalMatrix::identity(n1).hstack(&RationalMatrix::zeros(n1, v1)),
    );
    let inclusion = Lie2Hom::strong(qab, algebra.clone(), inc)?;
    let projection = Lie2Hom::strong(algebra.clone(), h.clone(), proj)?;
    refuse_first(&check_hom(&inclusion))?;
    refuse_first(&check_hom(&projection))?;
    Ok(AbelianExtension { algebra, inclusion, projection })
}

pub(crate) fn degree_one_parts(a: &Cochain) -> (RationalMatrix, RationalMatrix, MultiTensor) {
    (a.get(1, 0, 0).coeffs().clone(), a.get(0, 1, 1).coeffs().clone(), a.get(2, 0, 1).clone())
}

/// The isomorphism `h ⊕_{λ+DA} Q → h ⊕_λ Q`, `(x, p) ↦ (x, p + A₀x)`,
/// `(a, n) ↦ (a, n + A₁a)`, with quadratic part `A₂`.
pub fn coboundary_isomorphism(q: &Lie2Module, lambda: &Cochain, a: &Cochain) -> Result<Lie2Hom> {
    if a.degree != 1 {
        return Err(Error::Shape("A must be a degree-1 cochain".into()));
    }
    let shifted = lambda.add(&apply_coboundary(q, a));
    let src = twisted_sum(q, &shifted)?;
    let tgt = twisted_sum(q, lambda)?;
    let (n0, n1) = q.algebra.dims();
    let (v0, v1) = (q.v0(), q.v1());
    let (a0, a1, a2) = degree_one_parts(a);
    let mut f0 = RationalMatrix::identity(n0 + v0);
    let mut f1 = RationalMatrix::identity(n1 + v1);
    for i in 0..v0 {
        for j in 0..n0 {
            f0.set(n0 + i, j, a0.get(i, j).clone());
        }
    }
    for i in 0..v1 {
        for j in 0..n1 {
            f1.set(n1 + i, j, a1.get(i, j).clone());
        }
    }
    let f2 = MultiTensor::from_fn(2, 0, n0 + v0, n1 + v1, Target::V1, n1 + v1, |xs, _| {
        if xs[1] < n0 {
            lift(&a2.eval_basis(xs, &[]), n1 + v1, n1)
        } else {
            zero_vec(n1 + v1)
        }
    });
    Lie2Hom::new(src, tgt, GradedMap::new(f0, f1), f2)
}

/// A strong homomorphism `s : h → h ⊕_λ Q` with `π∘s = Id`, if one exists.
///
/// Such an `s` is `x ↦ (x, A₀x)`, `a ↦ (a, A₁a)` with `D(A₀ + A₁) = −λ`, so
/// existence is a linear solve over the two blocks.
pub fn strong_section(q: &Lie2Module, lambda: &Cochain) -> Result<Option<Lie2Hom>> {
    let ext = abelian_extension(q, lambda)?;
    let layout = cochain_space(q, 1);
    let d = coboundary(q, 1)?;
    let mut cols: Vec<usize> = Vec::new();
    for blk in [Block::new(1, 0, 0), Block::new(0, 1, 1)] {
        let i = layout.position(blk).expect("degree-1 block");
        cols.extend(layout.offsets[i]..layout.offsets[i] + layout.dims[i]);
    }
    let rows: Vec<usize> = (0..d.rows()).collect();
    let sub = d.select(&rows, &cols);
    let rhs: QVec = lambda.neg().flatten();
    let Ok(x) = solve(&sub, &rhs) else { return Ok(None) };
    let mut flat = zero_vec(layout.total);
    for (k, &c) in cols.iter().enumerate() {
        flat[c] = x[k].clone();
    }
    let a = Cochain::from_flat(q, 1, &flat)?;
    let (a0, a1, _) = degree_one_parts(&a);
    let (n0, n1) = q.algebra.dims();
    let s = GradedMap::new(stack(&RationalMatrix::identity(n0), &a0), stack(&RationalMatrix::identity(n1), &a1));
    let hom = Lie2Hom::strong(q.algebra.clone(), ext.algebra, s)?;
    refuse_first(&check_hom(&hom))?;
    Ok(Some(hom))
}

/// A sequence `V --p--> I --q--> Q` of modules over one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSequence {
    pub sub: Lie2Module,
    pub mid: Lie2Module,
    pub quot: Lie2Module,
    pub p: GradedMap,
    pub q: GradedMap,
}

pub const EXACTNESS: [&str; 5] =
    ["p is a module map", "q is a module map", "p is injective", "q is surjective", "Img p = ker q"];

impl ModuleSequence {
    /// Checks that `0 → V → I → Q → 0` is a short exact sequence of modules.
    pub fn check_exact(&self) -> Verdict {
        let mut v = Verdict::new();
        let pm = is_module_map(&self.sub, &self.mid, &self.p);
        v.expect(EXACTNESS[0], pm.is_ok(), || pm.clone().unwrap_err());
        let qm = is_module_map(&self.mid, &self.quot, &self.q);
        v.expect(EXACTNESS[1], qm.is_ok(), || qm.clone().unwrap_err());
        if pm.is_err() || qm.is_err() {
            return v;
        }
        let inj = (0..2).find(|&s| rank(self.p.component(s)) != self.p.component(s).cols());
        v.expect(EXACTNESS[2], inj.is_none(), || format!("degree {}", inj.unwrap_or(0)));
        let sur = (0..2).find(|&s| rank(self.q.component(s)) != self.q.component(s).rows());
        v.expect(EXACTNESS[3], sur.is_none(), || format!("degree {}", sur.unwrap_or(0)));
        let mid = (0..2).find(|&s| {
            let ker = Subspace::span(self.q.component(s).cols(), &kernel_basis(self.q.component(s)));
            column_space(self.p.component(s)) != ker
        });
        v.expect(EXACTNESS[4], mid.is_none(), || format!("degree {}", mid.unwrap_or(0)));
        v
    }

    pub(crate) fn require_exact(&self) -> Result<()> {
        if self.sub.algebra != self.mid.algebra || self.mid.algebra != self.quot.algebra {
            return Err(Error::Shape("the three modules must be over one algebra".into()));
        }
        refuse_first(&self.check_exact())
    }
}

/// `(I, h ⊕_λ Q, φ, action)` with `φ(v) = (0, q(v))` and `h ⊕_λ Q` acting
/// on `I` through `h`.
pub fn splice(seq: &ModuleSequence, lambda: &Cochain) -> Result<CrossedModule> {
    seq.require_exact()?;
    let ext = abelian_extension(&seq.quot, lambda)?;
    let g = ext.algebra.clone();
    let m = Lie2Algebra::abelian(seq.mid.space.clone());
    let module = seq.mid.pullback(&ext.projection)?;
    let (n0, n1) = seq.quot.algebra.dims();
    let (i0, i1) = m.dims();
    let phi = GradedMap::new(
        stack(&RationalMatrix::zeros(n0, i0), &seq.q.m0),
        stack(&RationalMatrix::zeros(n1, i1), &seq.q.m1),
    );
    let lphi0 = DerivAction::trivial(&g, &m).lphi0;
    let cm = CrossedModule {
        phi2: MultiTensor::zero(2, 0, i0, i1, Target::V1, g.n1()),
        sigma: zero_sigma(g.n0(), g.n1(), i0),
        action: DerivAction { module, lphi0 },
        phi,
        m,
        g,
    };
    refuse_first(&check_crossed_module(&cm)?)?;
    Ok(cm)
}
