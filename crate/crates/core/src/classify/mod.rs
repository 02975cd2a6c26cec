//! Abelian extensions, the crossed modules `ε_λ`, and the class `μ(ε) ∈ H³(h, V)`.
//!
//! Everything here works with explicit finite-dimensional data: where a free
//! Lie 2-algebra would be needed, the caller supplies `g` with an ideal `k`.

mod connecting;
mod extension;
mod lambda;
mod mu;
#[cfg(test)]
mod tests;

pub use connecting::{connecting_cochain, connecting_map, ConnectingMap, CONNECTING_CHECKS};
pub use extension::{
    abelian_extension, coboundary_isomorphism, splice, strong_section, twisted_sum, AbelianExtension,
    ModuleSequence, EXACTNESS,
};
pub use lambda::{
    check_lambda_condition, epsilon_lambda, gauge_transform, ExtensionDatum, GaugeTransformation, LambdaCheck,
    LAMBDA_CONDITION,
};
pub use mu::{
    elementary_equivalence_check, mu, section_change_witness, strong_map_invariance, Mu, SectionPair,
    ELEMENTARY_CONDITIONS, SECTION_CHANGE, STRONG_MAP,
};

use crate::error::{Error, Result};
use crate::graded::{BasisIndexer, GradedMap, MultiTensor};
use crate::lie2core::{Lie2Algebra, Quotient};
use crate::ratlin::{QVec, RationalMatrix, Subspace};
use crate::repcoh::{Cochain, Lie2Module};

/// `c ∘ (s₀^{⊗p} ⊗ s₁^{⊗q})`, as a cochain for `onto` (whose algebra is the new source).
pub fn pull_back(c: &Cochain, s: &GradedMap, onto: &Lie2Module) -> Result<Cochain> {
    let blocks = c.blocks.iter().zip(&c.parts).map(|(b, t)| (*b, t.pullback(&s.m0, &s.m1))).collect();
    Cochain::from_blocks(onto, c.degree, blocks)
}

/// `t_s ∘ c` on values, as a cochain for `onto` (whose space is the new target).
pub fn push_forward(c: &Cochain, t: &GradedMap, onto: &Lie2Module) -> Result<Cochain> {
    let blocks = c
        .blocks
        .iter()
        .zip(&c.parts)
        .map(|(b, f)| (*b, f.post_compose(t.component(b.s), b.target())))
        .collect();
    Cochain::from_blocks(onto, c.degree, blocks)
}

/// Rewrites a cochain valued in a graded subspace in the subspace's coordinates.
pub fn into_subspace(c: &Cochain, sub: (&Subspace, &Subspace), onto: &Lie2Module, what: &str) -> Result<Cochain> {
    let mut blocks = Vec::with_capacity(c.blocks.len());
    for (b, f) in c.blocks.iter().zip(&c.parts) {
        let sp = if b.s == 0 { sub.0 } else { sub.1 };
        let mut cols = Vec::with_capacity(f.ncols());
        for (k, (xs, as_)) in f.basis_tuples().into_iter().enumerate() {
            let v = sp
                .coordinates(&f.column(k))
                .ok_or_else(|| Error::refused(what.to_string(), format!("block {b} at x{xs:?} a{as_:?}")))?;
            cols.push(v);
        }
        let coeffs = RationalMatrix::from_columns(&cols, sp.dim());
        blocks.push((*b, MultiTensor::from_coeffs(b.p, b.q, f.n0, f.n1, b.target(), coeffs)?));
    }
    Cochain::from_blocks(onto, c.degree, blocks)
}

/// The `h`-module on `V` for a `g`-module that is trivial on `ker π`.
pub fn descend_module(v: &Lie2Module, quo: &Quotient) -> Result<Lie2Module> {
    let h = &quo.algebra;
    let (n0, n1) = h.dims();
    let s = &quo.section;
    let act00 = (0..n0).map(|x| v.rho00(&s.m0.column(x))).collect();
    let act01 = (0..n0).map(|x| v.rho01(&s.m0.column(x))).collect();
    let act10 = (0..n1).map(|a| v.rho10(&s.m1.column(a))).collect();
    let act2 = BasisIndexer::get(n0, 2, true)
        .tuples()
        .iter()
        .map(|t| v.rho2(&s.m0.column(t[0]), &s.m0.column(t[1])))
        .collect();
    Lie2Module::new(h.clone(), v.space.clone(), act00, act01, act10, act2)
}

/// Layout-only module: the algebra `h` acting trivially on the complex of `m`.
pub(crate) fn carrier(h: &Lie2Algebra, m: &Lie2Algebra) -> Lie2Module {
    Lie2Module::trivial(h.clone(), m.space.clone())
}

/// Whether `f : V → W` is a chain map commuting with every piece of the two actions.
pub fn is_module_map(src: &Lie2Module, tgt: &Lie2Module, f: &GradedMap) -> std::result::Result<(), String> {
    if src.algebra != tgt.algebra {
        return Err("modules over different algebras".into());
    }
    if f.source_dims() != (src.v0(), src.v1()) || f.target_dims() != (tgt.v0(), tgt.v1()) {
        return Err("map shape".into());
    }
    if !f.is_chain_map(&src.space, &tgt.space) {
        return Err("not a chain map".into());
    }
    let (n0, n1) = src.algebra.dims();
    for x in 0..n0 {
        if f.m0.mul(&src.act00[x]) != tgt.act00[x].mul(&f.m0) {
            return Err(format!("x{x}▷ on degree 0"));
        }
        if f.m1.mul(&src.act01[x]) != tgt.act01[x].mul(&f.m1) {
            return Err(format!("x{x}▷ on degree 1"));
        }
    }
    for a in 0..n1 {
        if f.m1.mul(&src.act10[a]) != tgt.act10[a].mul(&f.m0) {
            return Err(format!("a{a}▷"));
        }
    }
    for (k, (l, r)) in src.act2.iter().zip(&tgt.act2).enumerate() {
        if f.m1.mul(l) != r.mul(&f.m0) {
            return Err(format!("(x,y)▷ on pair {k}"));
        }
    }
    Ok(())
}

pub(crate) fn column_space(m: &RationalMatrix) -> Subspace {
    let cols: Vec<QVec> = m.columns();
    Subspace::span(m.rows(), &cols)
}
