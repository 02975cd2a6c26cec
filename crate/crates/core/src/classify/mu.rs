//! The class `μ(ε) ∈ H³(h, V)` of a strong crossed module and its invariance.

use crate::crossmod::{check_morphism, four_term_sequence, CrossedModule, CrossedModuleMorphism, FourTermSequence};
use crate::error::{Error, Result};
use crate::graded::{GradedMap, MultiTensor, Target};
use crate::lie2core::Lie2Hom;
use crate::ratlin::{is_zero_vec, section_on_image, sub_vec, QVec, Rational, RationalMatrix};
use crate::repcoh::{apply_coboundary, class_coordinates, Block, Cochain};
use crate::report::Verdict;

use super::{carrier, into_subspace, pull_back};

/// Sections `s : h → g` of `π` and `q : Img φ → m` of `φ` (extended to all of `g`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPair {
    pub s: GradedMap,
    pub q: GradedMap,
}

impl SectionPair {
    /// The quotient's echelon section and `q = section_on_image(φ)`.
    pub fn auto(cm: &CrossedModule, seq: &FourTermSequence) -> Self {
        SectionPair {
            s: seq.quotient.section.clone(),
            q: GradedMap::new(section_on_image(&cm.phi.m0), section_on_image(&cm.phi.m1)),
        }
    }

    /// `s` moved by the first basis vector of `Img φ` in every column; `q` kept.
    pub fn shifted(&self, seq: &FourTermSequence) -> Self {
        let shift = |m: &RationalMatrix, b: Option<&QVec>| {
            let mut out = m.clone();
            if let Some(b) = b {
                for j in 0..m.cols() {
                    out.set_column(j, &crate::ratlin::add_vec(&out.column(j), b));
                }
            }
            out
        };
        let im = &seq.image;
        SectionPair {
            s: GradedMap::new(shift(&self.s.m0, im.s0.basis().first()), shift(&self.s.m1, im.s1.basis().first())),
            q: self.q.clone(),
        }
    }

    /// Refuses unless `π∘s = Id` and `φ∘q∘φ = φ`.
    pub fn validate(&self, cm: &CrossedModule, seq: &FourTermSequence) -> Result<()> {
        let (h0, h1) = seq.quotient.algebra.dims();
        let pi = &seq.quotient.projection.maps;
        if self.s.source_dims() != (h0, h1) || self.s.target_dims() != cm.g.dims() {
            return Err(Error::Shape("s must map h to g".into()));
        }
        if self.q.source_dims() != cm.g.dims() || self.q.target_dims() != cm.m.dims() {
            return Err(Error::Shape("q must map g to m".into()));
        }
        if pi.compose(&self.s) != GradedMap::identity(h0, h1) {
            return Err(Error::refused("π∘s = Id", "section s"));
        }
        if cm.phi.compose(&self.q).compose(&cm.phi) != cm.phi {
            return Err(Error::refused("φ∘q = Id on Img φ", "section q"));
        }
        Ok(())
    }
}

/// `θ_ε` with the data it was built from.
#[derive(Clone, Debug)]
pub struct Mu {
    pub sequence: FourTermSequence,
    pub sections: SectionPair,
    /// `λ_ε ∈ C²(h, m)`.
    pub lambda: Cochain,
    /// `θ_ε ∈ C³(h, V)`, in the coordinates of `V`.
    pub theta: Cochain,
    /// Coordinates of `[θ_ε]` in the fixed basis of `H³(h, V)`.
    pub class_id: QVec,
}

/// `q_s(w)` after checking `w ∈ Img φ_s`.
fn q_on_image(cm: &CrossedModule, q: &GradedMap, s: usize, w: &[Rational], at: impl FnOnce() -> String) -> Result<QVec> {
    let v = q.component(s).mul_vec(w);
    if cm.phi.component(s).mul_vec(&v) != w {
        return Err(Error::refused(format!("argument of q_{s} lies in Img φ_{s}"), at()));
    }
    Ok(v)
}

fn try_from_fn(
    p: usize,
    q: usize,
    dims: (usize, usize),
    target: Target,
    tdim: usize,
    mut f: impl FnMut(&[usize], &[usize]) -> Result<QVec>,
) -> Result<MultiTensor> {
    let mut err = None;
    let t = MultiTensor::from_fn(p, q, dims.0, dims.1, target, tdim, |xs, as_| match f(xs, as_) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            vec![Rational::from_integer(0.into()); tdim]
        }
    });
    err.map_or(Ok(t), Err)
}

/// The four blocks of `λ_ε` for the sections `(s, q)`, valued in `m`.
fn lambda_blocks(cm: &CrossedModule, seq: &FourTermSequence, sp: &SectionPair) -> Result<Cochain> {
    let (g, h) = (&cm.g, &seq.quotient.algebra);
    let dims = h.dims();
    let (m0, m1) = cm.m.dims();
    let (s0, s1) = (&sp.s.m0, &sp.s.m1);
    let l0 = try_from_fn(0, 1, dims, Target::V0, m0, |_, a| {
        let (ea, sa) = (h.e1(a[0]), s1.column(a[0]));
        let w = sub_vec(&g.d(&sa), &s0.mul_vec(&h.d(&ea)));
        q_on_image(cm, &sp.q, 0, &w, || format!("λ₀(a{})", a[0]))
    })?;
    let l1 = try_from_fn(2, 0, dims, Target::V0, m0, |xs, _| {
        let (ex, ey) = (h.e0(xs[0]), h.e0(xs[1]));
        let w = sub_vec(&g.br00(&s0.column(xs[0]), &s0.column(xs[1])), &s0.mul_vec(&h.br00(&ex, &ey)));
        q_on_image(cm, &sp.q, 0, &w, || format!("λ₁(x{}, x{})", xs[0], xs[1]))
    })?;
    let l2 = try_from_fn(1, 1, dims, Target::V1, m1, |xs, as_| {
        let (ex, ea) = (h.e0(xs[0]), h.e1(as_[0]));
        let w = sub_vec(&g.br01(&s0.column(xs[0]), &s1.column(as_[0])), &s1.mul_vec(&h.br01(&ex, &ea)));
        q_on_image(cm, &sp.q, 1, &w, || format!("λ₂(x{}, a{})", xs[0], as_[0]))
    })?;
    let l3 = try_from_fn(3, 0, dims, Target::V1, m1, |xs, _| {
        let e: Vec<QVec> = xs.iter().map(|&i| h.e0(i)).collect();
        let sx: Vec<QVec> = xs.iter().map(|&i| s0.column(i)).collect();
        let w = sub_vec(&g.l3v(&sx[0], &sx[1], &sx[2]), &s1.mul_vec(&h.l3v(&e[0], &e[1], &e[2])));
        q_on_image(cm, &sp.q, 1, &w, || format!("λ₃(x{}, x{}, x{})", xs[0], xs[1], xs[2]))
    })?;
    let car = carrier(h, &cm.m);
    Cochain::from_blocks(
        &car,
        2,
        vec![(Block::new(0, 1, 0), l0), (Block::new(2, 0, 0), l1), (Block::new(1, 1, 1), l2), (Block::new(3, 0, 1), l3)],
    )
}

/// `s*(D^g(π*λ))` for a 2-cochain `λ ∈ C²(h, m)`, in `V` coordinates.
fn theta_of(cm: &CrossedModule, seq: &FourTermSequence, s: &GradedMap, lambda: &Cochain) -> Result<Cochain> {
    let pl = pull_back(lambda, &seq.quotient.projection.maps, &cm.action.module)?;
    let dl = apply_coboundary(&cm.action.module, &pl);
    let on_h = pull_back(&dl, s, &carrier(&seq.quotient.algebra, &cm.m))?;
    into_subspace(&on_h, (&seq.kernel.s0, &seq.kernel.s1), &seq.module, "φ∘θ = 0")
}

fn mu_with(cm: &CrossedModule, seq: FourTermSequence, sections: SectionPair) -> Result<Mu> {
    sections.validate(cm, &seq)?;
    let lambda = lambda_blocks(cm, &seq, &sections)?;
    let theta = theta_of(cm, &seq, &sections.s, &lambda)?;
    let dt = apply_coboundary(&seq.module, &theta);
    if let Some(w) = dt.first_nonzero() {
        return Err(Error::refused("D^h θ = 0", w));
    }
    let class_id = class_coordinates(&seq.module, &theta)?;
    Ok(Mu { sequence: seq, sections, lambda, theta, class_id })
}

/// `μ(ε) = [s*(D^g(π*λ_ε))]`; sections default to [`SectionPair::auto`].
pub fn mu(cm: &CrossedModule, sections: Option<&SectionPair>) -> Result<Mu> {
    if !cm.is_strong() {
        return Err(Error::refused("crossed module is strong", "σ ≠ 0"));
    }
    let seq = four_term_sequence(cm)?;
    let sp = sections.cloned().unwrap_or_else(|| SectionPair::auto(cm, &seq));
    mu_with(cm, seq, sp)
}

/// Cochain `c ∈ C²(h, m)` with values in `V`, rewritten in `V` coordinates.
fn in_v(c: &Cochain, seq: &FourTermSequence, what: &str) -> Result<Cochain> {
    into_subspace(c, (&seq.kernel.s0, &seq.kernel.s1), &seq.module, what)
}

pub const SECTION_CHANGE: [&str; 2] = ["λ − λ̄ − B takes values in V", "θ − θ̄ = D^h(λ − λ̄ − B)"];

/// The 2-cochain `B` relating the sections `s` and `s̄` (sharing `q`), with
/// the verdict of the two identities it witnesses.
pub fn section_change_witness(cm: &CrossedModule, s: &GradedMap, s_bar: &GradedMap, q: &GradedMap) -> Result<(Cochain, Verdict)> {
    let seq = four_term_sequence(cm)?;
    let a = SectionPair { s: s.clone(), q: q.clone() };
    let b = SectionPair { s: s_bar.clone(), q: q.clone() };
    a.validate(cm, &seq)?;
    b.validate(cm, &seq)?;
    let diff = s.sub(s_bar);
    let h = seq.quotient.algebra.clone();
    let md = &cm.action.module;
    let (m0, m1) = cm.m.dims();
    let dims = h.dims();
    let t0 = |x: usize| q_on_image(cm, q, 0, &diff.m0.column(x), || format!("(s − s̄)(x{x})"));
    let t1 = |a: usize| q_on_image(cm, q, 1, &diff.m1.column(a), || format!("(s − s̄)(a{a})"));
    let (s0, s1, sb0) = (&s.m0, &s.m1, &s_bar.m0);
    let b0 = try_from_fn(0, 1, dims, Target::V0, m0, |_, a| {
        let ta = t1(a[0])?;
        let tda = q_on_image(cm, q, 0, &diff.m0.mul_vec(&h.d(&h.e1(a[0]))), || format!("(s − s̄)(d a{})", a[0]))?;
        Ok(sub_vec(&cm.m.d(&ta), &tda))
    })?;
    let b1 = try_from_fn(2, 0, dims, Target::V0, m0, |xs, _| {
        let (x, y) = (xs[0], xs[1]);
        let txy = q_on_image(cm, q, 0, &diff.m0.mul_vec(&h.br00(&h.e0(x), &h.e0(y))), || format!("[x{x}, x{y}]"))?;
        let v = sub_vec(&md.rho00(&sb0.column(x)).mul_vec(&t0(y)?), &md.rho00(&s0.column(y)).mul_vec(&t0(x)?));
        Ok(sub_vec(&v, &txy))
    })?;
    let b2 = try_from_fn(1, 1, dims, Target::V1, m1, |xs, as_| {
        let (x, a) = (xs[0], as_[0]);
        let txa = q_on_image(cm, q, 1, &diff.m1.mul_vec(&h.br01(&h.e0(x), &h.e1(a))), || format!("[x{x}, a{a}]"))?;
        let v = sub_vec(&md.rho01(&sb0.column(x)).mul_vec(&t1(a)?), &md.rho10(&s1.column(a)).mul_vec(&t0(x)?));
        Ok(sub_vec(&v, &txa))
    })?;
    let b3 = try_from_fn(3, 0, dims, Target::V1, m1, |xs, _| {
        let (x, y, z) = (xs[0], xs[1], xs[2]);
        let (sx, sy, sz) = (s0.column(x), s0.column(y), s0.column(z));
        let (bx, by, bz) = (sb0.column(x), sb0.column(y), sb0.column(z));
        let (tx, ty, tz) = (t0(x)?, t0(y)?, t0(z)?);
        let act = |u: &[Rational], v: &[Rational], w: &[Rational]| md.rho2(u, v).mul_vec(w);
        let mut r = act(&sx, &sy, &tz);
        r = crate::ratlin::add_vec(&r, &act(&bx, &by, &tz));
        r = sub_vec(&act(&sx, &by, &tz), &r);
        r = sub_vec(&r, &act(&by, &sz, &tx));
        r = sub_vec(&r, &act(&bz, &sx, &ty));
        let l3 = h.l3v(&h.e0(x), &h.e0(y), &h.e0(z));
        let tl3 = q_on_image(cm, q, 1, &diff.m1.mul_vec(&l3), || format!("l₃(x{x}, x{y}, x{z})"))?;
        Ok(sub_vec(&r, &tl3))
    })?;
    let car = carrier(&h, &cm.m);
    let bc = Cochain::from_blocks(
        &car,
        2,
        vec![(Block::new(0, 1, 0), b0), (Block::new(2, 0, 0), b1), (Block::new(1, 1, 1), b2), (Block::new(3, 0, 1), b3)],
    )?;
    let la = lambda_blocks(cm, &seq, &a)?;
    let lb = lambda_blocks(cm, &seq, &b)?;
    let mut verdict = Verdict::new();
    let rest = la.sub(&lb).sub(&bc);
    let in_v_rest = in_v(&rest, &seq, SECTION_CHANGE[0]);
    verdict.expect(SECTION_CHANGE[0], in_v_rest.is_ok(), || in_v_rest.as_ref().unwrap_err().to_string());
    if let Ok(r) = in_v_rest {
        let ta = theta_of(cm, &seq, s, &la)?;
        let tb = theta_of(cm, &seq, s_bar, &lb)?;
        let lhs = ta.sub(&tb);
        let rhs = apply_coboundary(&seq.module, &r);
        verdict.expect(SECTION_CHANGE[1], lhs == rhs, || lhs.sub(&rhs).first_nonzero().unwrap_or_default());
    }
    Ok((bc, verdict))
}

pub const STRONG_MAP: [&str; 6] = [
    "morphism of crossed modules",
    "F and G are strong",
    "G induces the identity on h",
    "F induces the identity on V",
    "both sides induce the same h-module on V",
    "θ − θ' = D^h B",
];

fn diagram_checks(sa: &FourTermSequence, sb: &FourTermSequence, f: &Lie2Hom, g: &Lie2Hom, names: [&str; 3], v: &mut Verdict) {
    let ha = &sa.quotient.algebra;
    let same_h = *ha == sb.quotient.algebra
        && sb.quotient.projection.maps.compose(&g.maps).compose(&sa.quotient.section) == GradedMap::identity(ha.n0(), ha.n1());
    v.expect(names[0], same_h, || "π'∘G∘s".into());
    let same_v = f.maps.compose(&sa.inclusion()) == sb.inclusion();
    v.expect(names[1], same_v, || "F∘i ≠ i'".into());
    v.expect(names[2], sa.module == sb.module, || "induced actions differ".into());
}

/// Checks that the strong map `(F, G) : ε_A → ε_B` relates `θ_A` and `θ_B`
/// (built with `s' = G∘s`) by `D^h B`.
pub fn strong_map_invariance(a: &CrossedModule, b: &CrossedModule, f: &Lie2Hom, g: &Lie2Hom) -> Result<Verdict> {
    let mut v = Verdict::new();
    let tau = vec![RationalMatrix::zeros(b.m.n1(), a.m.n0()); a.g.n0()];
    let mor = CrossedModuleMorphism { f: f.clone(), g: g.clone(), tau };
    v.absorb(STRONG_MAP[0], check_morphism(a, b, &mor)?);
    v.expect(STRONG_MAP[1], f.is_strong() && g.is_strong(), || "F₂ or G₂ ≠ 0".into());
    let mu_a = mu(a, None)?;
    let sb = four_term_sequence(b)?;
    diagram_checks(&mu_a.sequence, &sb, f, g, [STRONG_MAP[2], STRONG_MAP[3], STRONG_MAP[4]], &mut v);
    if !v.passed() {
        return Ok(v);
    }
    let sp = &mu_a.sections;
    let spb = SectionPair { s: g.maps.compose(&sp.s), q: SectionPair::auto(b, &sb).q };
    let mu_b = mu_with(b, sb, spb)?;
    // (F q − q' G) applied to the defect of s in each block
    let fq = f.maps.compose(&sp.q);
    let qg = mu_b.sections.q.compose(&g.maps);
    let diff = fq.sub(&qg);
    let h = &mu_a.sequence.quotient.algebra;
    let defect = lambda_blocks_raw(a, h, &sp.s)?;
    let bc = super::push_forward(&defect, &diff, &carrier(h, &b.m))?;
    let bv = in_v(&bc, &mu_b.sequence, "B takes values in V")?;
    let lhs = mu_a.theta.sub(&mu_b.theta);
    let rhs = apply_coboundary(&mu_b.sequence.module, &bv);
    v.expect(STRONG_MAP[5], lhs == rhs, || lhs.sub(&rhs).first_nonzero().unwrap_or_default());
    Ok(v)
}

/// The defects `ds₁ − s₀d`, `[s₀,s₀] − s₀[,]`, `[s₀,s₁] − s₁[,]`,
/// `l₃(s₀,s₀,s₀) − s₁l₃`, valued in `g` (before applying `q`).
fn lambda_blocks_raw(cm: &CrossedModule, h: &crate::lie2core::Lie2Algebra, s: &GradedMap) -> Result<Cochain> {
    let g = &cm.g;
    let (n0, n1) = g.dims();
    let dims = h.dims();
    let (s0, s1) = (&s.m0, &s.m1);
    let l0 = MultiTensor::from_fn(0, 1, dims.0, dims.1, Target::V0, n0, |_, a| {
        sub_vec(&g.d(&s1.column(a[0])), &s0.mul_vec(&h.d(&h.e1(a[0]))))
    });
    let l1 = MultiTensor::from_fn(2, 0, dims.0, dims.1, Target::V0, n0, |xs, _| {
        sub_vec(&g.br00(&s0.column(xs[0]), &s0.column(xs[1])), &s0.mul_vec(&h.br00(&h.e0(xs[0]), &h.e0(xs[1]))))
    });
    let l2 = MultiTensor::from_fn(1, 1, dims.0, dims.1, Target::V1, n1, |xs, as_| {
        sub_vec(&g.br01(&s0.column(xs[0]), &s1.column(as_[0])), &s1.mul_vec(&h.br01(&h.e0(xs[0]), &h.e1(as_[0]))))
    });
    let l3 = MultiTensor::from_fn(3, 0, dims.0, dims.1, Target::V1, n1, |xs, _| {
        let e: Vec<QVec> = xs.iter().map(|&i| h.e0(i)).collect();
        let sx: Vec<QVec> = xs.iter().map(|&i| s0.column(i)).collect();
        sub_vec(&g.l3v(&sx[0], &sx[1], &sx[2]), &s1.mul_vec(&h.l3v(&e[0], &e[1], &e[2])))
    });
    Cochain::from_blocks(
        &super::carrier(h, g),
        2,
        vec![(Block::new(0, 1, 0), l0), (Block::new(2, 0, 0), l1), (Block::new(1, 1, 1), l2), (Block::new(3, 0, 1), l3)],
    )
}

pub const ELEMENTARY_CONDITIONS: [&str; 8] = [
    "morphism of crossed modules",
    "G induces the identity on h",
    "F induces the identity on V",
    "both sides induce the same h-module on V",
    "G₂ = 0",
    "Img τ ⊂ i'(V)",
    "τ(g₀ ∧ i(V)) = 0",
    "τ(φ₀α, β) = τ(α, φ₀β)",
];

/// Checks that `(F, G, τ) : ε_A → ε_B` is an elementary equivalence.
pub fn elementary_equivalence_check(a: &CrossedModule, b: &CrossedModule, mor: &CrossedModuleMorphism) -> Result<Verdict> {
    let mut v = Verdict::new();
    v.absorb(ELEMENTARY_CONDITIONS[0], check_morphism(a, b, mor)?);
    let sa = four_term_sequence(a)?;
    let sb = four_term_sequence(b)?;
    diagram_checks(
        &sa,
        &sb,
        &mor.f,
        &mor.g,
        [ELEMENTARY_CONDITIONS[1], ELEMENTARY_CONDITIONS[2], ELEMENTARY_CONDITIONS[3]],
        &mut v,
    );
    v.expect(ELEMENTARY_CONDITIONS[4], mor.g.is_strong(), || "G₂ ≠ 0".into());
    let ker_b1 = &sb.kernel.s1;
    let mut bad_img = None;
    'img: for (x, t) in mor.tau.iter().enumerate() {
        for c in 0..t.cols() {
            if !ker_b1.contains(&t.column(c)) {
                bad_img = Some(format!("τ(x{x}, α{c})"));
                break 'img;
            }
        }
    }
    v.expect(ELEMENTARY_CONDITIONS[5], bad_img.is_none(), || bad_img.clone().unwrap_or_default());
    let mut bad_v = None;
    'v: for (x, t) in mor.tau.iter().enumerate() {
        for (i, u) in sa.kernel.s0.basis().iter().enumerate() {
            if !is_zero_vec(&t.mul_vec(u)) {
                bad_v = Some(format!("τ(x{x}, V₀[{i}])"));
                break 'v;
            }
        }
    }
    v.expect(ELEMENTARY_CONDITIONS[6], bad_v.is_none(), || bad_v.clone().unwrap_or_default());
    let tau_at = |x: &[Rational], beta: &[Rational]| {
        let mut out = vec![Rational::from_integer(0.into()); b.m.n1()];
        for (i, c) in x.iter().enumerate() {
            crate::graded::accumulate(&mut out, c, &mor.tau[i].mul_vec(beta));
        }
        out
    };
    let mut bad_sym = None;
    let m0 = a.m.n0();
    'sym: for i in 0..m0 {
        for j in 0..m0 {
            let (ei, ej) = (crate::ratlin::unit_vec(m0, i), crate::ratlin::unit_vec(m0, j));
            // τ lives on g₀ ∧ m₀, so τ(α, φ₀β) = −τ(φ₀β, α)
            if tau_at(&a.phi.m0.mul_vec(&ei), &ej) != crate::ratlin::neg_vec(&tau_at(&a.phi.m0.mul_vec(&ej), &ei)) {
                bad_sym = Some(format!("α{i}, α{j}"));
                break 'sym;
            }
        }
    }
    v.expect(ELEMENTARY_CONDITIONS[7], bad_sym.is_none(), || bad_sym.clone().unwrap_or_default());
    Ok(v)
}
