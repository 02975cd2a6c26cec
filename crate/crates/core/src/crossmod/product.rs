//! The crossed product `g ▷ m` and its converse.

use crate::error::{Error, Result};
use crate::graded::{BasisIndexer, GradedMap, MultiTensor, Target, TwoTermSpace};
use crate::lie2core::{is_ideal, is_subalgebra, GradedSubspace, Lie2Algebra};
use crate::ratlin::{neg_vec, unit_vec, zero_vec, QVec, Rational, RationalMatrix, Subspace};
use crate::repcoh::Lie2Module;

use super::DerivAction;

fn block_diag(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let top = a.hstack(&RationalMatrix::zeros(a.rows(), b.cols()));
    let bottom = RationalMatrix::zeros(b.rows(), a.cols()).hstack(b);
    top.vstack(&bottom)
}

fn concat(head: &[Rational], tail: &[Rational]) -> QVec {
    let mut v = head.to_vec();
    v.extend_from_slice(tail);
    v
}

/// `g ▷ m` on `g₀ ⊕ m₀`, `g₁ ⊕ m₁` (the `g` coordinates first).
pub fn crossed_product(g: &Lie2Algebra, m: &Lie2Algebra, action: &DerivAction) -> Result<Lie2Algebra> {
    let md = &action.module;
    if md.algebra != *g || md.space != m.space || action.lphi0.len() != g.n0() {
        return Err(Error::Shape("action does not match the two algebras".into()));
    }
    let (n0, n1) = g.dims();
    let (k0, k1) = m.dims();
    let (t0, t1) = (n0 + k0, n1 + k1);
    let space = TwoTermSpace::new(t0, t1, block_diag(&g.space.diff, &m.space.diff))?;
    let z0 = || zero_vec(n0);
    let z1 = || zero_vec(n1);

    let l2_00 = MultiTensor::from_fn(2, 0, t0, t1, Target::V0, t0, |xs, _| {
        let (i, j) = (xs[0], xs[1]);
        match (i < n0, j < n0) {
            (true, true) => concat(&g.l2_00.eval_basis(&[i, j], &[]), &zero_vec(k0)),
            (true, false) => concat(&z0(), &md.act00[i].column(j - n0)),
            (false, true) => concat(&z0(), &neg_vec(&md.act00[j].column(i - n0))),
            (false, false) => concat(&z0(), &m.l2_00.eval_basis(&[i - n0, j - n0], &[])),
        }
    });
    let l2_01 = MultiTensor::from_fn(1, 1, t0, t1, Target::V1, t1, |xs, as_| {
        let (x, a) = (xs[0], as_[0]);
        match (x < n0, a < n1) {
            (true, true) => concat(&g.l2_01.eval_basis(&[x], &[a]), &zero_vec(k1)),
            (true, false) => concat(&z1(), &md.act01[x].column(a - n1)),
            (false, true) => concat(&z1(), &neg_vec(&md.act10[a].column(x - n0))),
            (false, false) => concat(&z1(), &m.l2_01.eval_basis(&[x - n0], &[a - n1])),
        }
    });
    let l3 = MultiTensor::from_fn(3, 0, t0, t1, Target::V1, t1, |xs, _| {
        let (i, j, k) = (xs[0], xs[1], xs[2]);
        let in_g = xs.iter().filter(|&&t| t < n0).count();
        match in_g {
            3 => concat(&g.l3.eval_basis(&[i, j, k], &[]), &zero_vec(k1)),
            2 => concat(&z1(), &neg_vec(&md.rho2_basis(i, j).column(k - n0))),
            1 => concat(&z1(), &action.lphi0[i].eval_basis(&[j - n0, k - n0], &[])),
            _ => concat(&z1(), &m.l3.eval_basis(&[i - n0, j - n0, k - n0], &[])),
        }
    });
    Lie2Algebra::new(space, l2_00, l2_01, l3)
}

/// Result of [`split_crossed_product`].
#[derive(Clone, Debug)]
pub struct Splitting {
    pub g: Lie2Algebra,
    pub m: Lie2Algebra,
    pub action: DerivAction,
}

/// Recovers `g`, `m`, and the action from `L = g ⊕ m` with `g` a subalgebra
/// and `m` an ideal, each given by a basis of its two degrees.
pub fn split_crossed_product(
    l: &Lie2Algebra,
    g_basis: (&[QVec], &[QVec]),
    m_basis: (&[QVec], &[QVec]),
) -> Result<Splitting> {
    let (t0, t1) = l.dims();
    let (n0, n1) = (g_basis.0.len(), g_basis.1.len());
    let (k0, k1) = (m_basis.0.len(), m_basis.1.len());
    if n0 + k0 != t0 || n1 + k1 != t1 {
        return Err(Error::refused("direct-sum decomposition", "dimensions do not add up"));
    }
    let mut c0 = g_basis.0.to_vec();
    c0.extend_from_slice(m_basis.0);
    let mut c1 = g_basis.1.to_vec();
    c1.extend_from_slice(m_basis.1);
    let p0 = RationalMatrix::from_columns(&c0, t0);
    let p1 = RationalMatrix::from_columns(&c1, t1);
    // the transported algebra has the chosen bases as standard vectors
    let (i0, i1) = (
        p0.inverse().map_err(|_| Error::refused("direct-sum decomposition", "degree-0 bases are dependent"))?,
        p1.inverse().map_err(|_| Error::refused("direct-sum decomposition", "degree-1 bases are dependent"))?,
    );
    let lt = l.transport(&i0, &i1)?;
    let units = |n: usize, r: std::ops::Range<usize>| -> Vec<QVec> { r.map(|i| unit_vec(n, i)).collect() };
    let gsub = GradedSubspace::new(Subspace::span(t0, &units(t0, 0..n0)), Subspace::span(t1, &units(t1, 0..n1)));
    let msub = GradedSubspace::new(Subspace::span(t0, &units(t0, n0..t0)), Subspace::span(t1, &units(t1, n1..t1)));
    let sv = is_subalgebra(&lt, &gsub);
    if let Some(c) = sv.first_failure() {
        return Err(Error::refused(format!("g is a subalgebra: {}", c.name), c.witness.clone().unwrap_or_default()));
    }
    let iv = is_ideal(&lt, &msub)?;
    if let Some(c) = iv.first_failure() {
        return Err(Error::refused(format!("m is an ideal: {}", c.name), c.witness.clone().unwrap_or_default()));
    }
    let g = lt.restrict(&gsub)?;
    let m = lt.restrict(&msub)?;

    let tail0 = |v: QVec| v[n0..].to_vec();
    let tail1 = |v: QVec| v[n1..].to_vec();
    let e0 = |i: usize| unit_vec(t0, i);
    let e1 = |i: usize| unit_vec(t1, i);
    let act00 = (0..n0)
        .map(|x| {
            let cols: Vec<QVec> = (0..k0).map(|a| tail0(lt.br00(&e0(x), &e0(n0 + a)))).collect();
            RationalMatrix::from_columns(&cols, k0)
        })
        .collect();
    let act01 = (0..n0)
        .map(|x| {
            let cols: Vec<QVec> = (0..k1).map(|a| tail1(lt.br01(&e0(x), &e1(n1 + a)))).collect();
            RationalMatrix::from_columns(&cols, k1)
        })
        .collect();
    // φ₁(a) = L₂(a, ·) = −L₂(·, a)
    let act10 = (0..n1)
        .map(|a| {
            let cols: Vec<QVec> = (0..k0).map(|al| neg_vec(&tail1(lt.br01(&e0(n0 + al), &e1(a))))).collect();
            RationalMatrix::from_columns(&cols, k1)
        })
        .collect();
    // φ₂(x, y) = −L₃(x, y, ·)
    let act2 = BasisIndexer::get(n0, 2, true)
        .tuples()
        .iter()
        .map(|t| {
            let cols: Vec<QVec> =
                (0..k0).map(|al| neg_vec(&tail1(lt.l3v(&e0(t[0]), &e0(t[1]), &e0(n0 + al))))).collect();
            RationalMatrix::from_columns(&cols, k1)
        })
        .collect();
    let lphi0 = (0..n0)
        .map(|x| {
            MultiTensor::from_fn(2, 0, k0, k1, Target::V1, k1, |xs, _| {
                tail1(lt.l3v(&e0(x), &e0(n0 + xs[0]), &e0(n0 + xs[1])))
            })
        })
        .collect();
    let module = Lie2Module::new(g.clone(), m.space.clone(), act00, act01, act10, act2)?;
    Ok(Splitting { g, m, action: DerivAction { module, lphi0 } })
}

/// The projection-free embedding data: `g` and `m` inside `g ▷ m`.
pub fn product_embeddings(g: &Lie2Algebra, m: &Lie2Algebra) -> (GradedMap, GradedMap) {
    let (n0, n1) = g.dims();
    let (k0, k1) = m.dims();
    let inc = |rows: usize, off: usize, cols: usize| {
        let vs: Vec<QVec> = (0..cols).map(|i| unit_vec(rows, off + i)).collect();
        RationalMatrix::from_columns(&vs, rows)
    };
    (
        GradedMap::new(inc(n0 + k0, 0, n0), inc(n1 + k1, 0, n1)),
        GradedMap::new(inc(n0 + k0, n0, k0), inc(n1 + k1, n1, k1)),
    )
}
