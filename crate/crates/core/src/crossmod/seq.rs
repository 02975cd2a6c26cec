//! The exact sequence `0 → V → m → g → h → 0` of a crossed module.

use crate::error::{Error, Result};
use crate::graded::{BasisIndexer, GradedMap, TwoTermSpace};
use crate::lie2core::{quotient, GradedSubspace, Quotient};
use crate::ratlin::{add_vec, image_basis, kernel_basis, QVec, Rational, RationalMatrix, Subspace};
use crate::repcoh::{check_action, Lie2Module};

use super::{refuse_first, CrossedModule};

pub const INDUCED_ACTION_HYPOTHESES: [&str; 2] = ["Img σ ⊂ Img φ₁", "σ(ker φ₀ ∧ g₀) = 0"];

/// `V = ker φ`, `h = g / Img φ`, and the induced action of `h` on `V`.
#[derive(Clone, Debug)]
pub struct FourTermSequence {
    /// `ker φ` inside `m`; its echelon basis gives the coordinates of `V`.
    pub kernel: GradedSubspace,
    /// `Img φ` inside `g`.
    pub image: GradedSubspace,
    pub quotient: Quotient,
    /// `h` acting on `V`.
    pub module: Lie2Module,
}

impl FourTermSequence {
    /// Coordinates in `V` of a vector of `m_s` lying in `ker φ_s`.
    pub fn v_coords(&self, s: usize, v: &[Rational]) -> Option<QVec> {
        let sub = if s == 0 { &self.kernel.s0 } else { &self.kernel.s1 };
        sub.coordinates(v)
    }

    /// The inclusion `V → m`.
    pub fn inclusion(&self) -> GradedMap {
        GradedMap::new(self.kernel.s0.inclusion(), self.kernel.s1.inclusion())
    }
}

fn restrict(sub_in: &Subspace, sub_out: &Subspace, m: &RationalMatrix, what: &str) -> Result<RationalMatrix> {
    let cols = sub_in
        .basis()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            sub_out
                .coordinates(&m.mul_vec(b))
                .ok_or_else(|| Error::refused(format!("{what} preserves ker φ"), format!("basis vector {i} of ker φ")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_columns(&cols, sub_out.dim()))
}

fn induced(cm: &CrossedModule, kernel: &GradedSubspace, q: &Quotient, s: &GradedMap) -> Result<Lie2Module> {
    let md = &cm.action.module;
    let h = &q.algebra;
    let (n0, n1) = h.dims();
    let (k0, k1) = (&kernel.s0, &kernel.s1);
    let sx = |x: usize| s.m0.column(x);
    let sa = |a: usize| s.m1.column(a);
    let act00 = (0..n0).map(|x| restrict(k0, k0, &md.rho00(&sx(x)), "x▷ on V₀")).collect::<Result<_>>()?;
    let act01 = (0..n0).map(|x| restrict(k1, k1, &md.rho01(&sx(x)), "x▷ on V₁")).collect::<Result<_>>()?;
    let act10 = (0..n1).map(|a| restrict(k0, k1, &md.rho10(&sa(a)), "a▷")).collect::<Result<_>>()?;
    let act2 = BasisIndexer::get(n0, 2, true)
        .tuples()
        .iter()
        .map(|t| restrict(k0, k1, &md.rho2(&sx(t[0]), &sx(t[1])), "(x,y)▷"))
        .collect::<Result<_>>()?;
    let d = restrict(k1, k0, &cm.m.space.diff, "d")?;
    let space = TwoTermSpace::new(k0.dim(), k1.dim(), d)?;
    Lie2Module::new(h.clone(), space, act00, act01, act10, act2)
}

/// A second section `s + u` with `u` valued in `Img φ`, for the independence check.
fn shifted_section(s: &GradedMap, image: &GradedSubspace) -> GradedMap {
    let shift = |m: &RationalMatrix, sub: &Subspace| {
        let mut out = m.clone();
        if let Some(b) = sub.basis().first() {
            for j in 0..m.cols() {
                let col = add_vec(&out.column(j), b);
                out.set_column(j, &col);
            }
        }
        out
    };
    GradedMap::new(shift(&s.m0, &image.s0), shift(&s.m1, &image.s1))
}

/// Builds the sequence after checking the hypotheses under which `h` is a
/// quotient algebra and acts on `V`; the induced action is recomputed with a
/// second section and must agree.
pub fn four_term_sequence(cm: &CrossedModule) -> Result<FourTermSequence> {
    let (g, m) = (&cm.g, &cm.m);
    let (n0, n1) = g.dims();
    let im1 = Subspace::span(n1, &image_basis(&cm.phi.m1));
    for (x, s) in cm.sigma.iter().enumerate() {
        for c in 0..s.cols() {
            if !im1.contains(&s.column(c)) {
                return Err(Error::refused(INDUCED_ACTION_HYPOTHESES[0], format!("σ(x{x}, α{c})")));
            }
        }
    }
    let ker0 = kernel_basis(&cm.phi.m0);
    for (x, s) in cm.sigma.iter().enumerate() {
        for (i, b) in ker0.iter().enumerate() {
            if !crate::ratlin::is_zero_vec(&s.mul_vec(b)) {
                return Err(Error::refused(INDUCED_ACTION_HYPOTHESES[1], format!("σ(x{x}, ker φ₀[{i}])")));
            }
        }
    }
    let image = GradedSubspace::new(Subspace::span(n0, &image_basis(&cm.phi.m0)), im1);
    let kernel = GradedSubspace::span(m.n0(), &ker0, m.n1(), &kernel_basis(&cm.phi.m1));
    let q = quotient(g, &image)?;
    for (deg, (v, k, im, h)) in [
        (m.n0(), kernel.s0.dim(), image.s0.dim(), q.algebra.n0()),
        (m.n1(), kernel.s1.dim(), image.s1.dim(), q.algebra.n1()),
    ]
    .into_iter()
    .enumerate()
    {
        let gd = if deg == 0 { n0 } else { n1 };
        if k + im != v || im + h != gd {
            return Err(Error::refused("exactness of 0 → V → m → g → h → 0", format!("degree {deg}")));
        }
    }
    let module = induced(cm, &kernel, &q, &q.section)?;
    let other = induced(cm, &kernel, &q, &shifted_section(&q.section, &image))?;
    if other != module {
        return Err(Error::refused("induced action is independent of the section", "shifted section"));
    }
    refuse_first(&check_action(&module))?;
    Ok(FourTermSequence { kernel, image, quotient: q, module })
}
