//! Lie 2-algebras, their homomorphisms, ideals and quotients, and strict
//! Lie 3-algebras, all as structure constants with exact identity checkers.

mod linf;

pub use linf::LInf;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{GradedMap, MultiTensor, Target, ThreeTermSpace, TwoTermSpace};
use crate::ratlin::{
    add_vec, image_basis, is_zero_vec, kernel_basis, quotient_basis, sub_vec, unit_vec,
    zero_vec, QVec, Rational, RationalMatrix, Subspace,
};
use crate::report::{Tally, Verdict};

/// Names of the four homomorphism conditions, in order.
pub const HOM_CONDITIONS: [&str; 4] = [
    "homomorphism condition 1 (d'φ₁ = φ₀d)",
    "homomorphism condition 2 (φ₀ on l₂ of g₀)",
    "homomorphism condition 3 (φ₁ on mixed l₂)",
    "homomorphism condition 4 (coherence with l₃)",
];

/// A two-term L∞-algebra `(d, l₂, l₃)` on `g₁ → g₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie2Algebra {
    pub space: TwoTermSpace,
    /// `Λ²g₀ → g₀`
    pub l2_00: MultiTensor,
    /// `g₀ ⊗ g₁ → g₁`, argument order `(x, a)`
    pub l2_01: MultiTensor,
    /// `Λ³g₀ → g₁`
    pub l3: MultiTensor,
}

fn expect_shape(t: &MultiTensor, p: usize, q_: usize, n: (usize, usize), tgt: Target, tdim: usize, what: &str) -> Result<()> {
    if t.p != p || t.q != q_ || (t.n0, t.n1) != n || t.target != tgt || t.target_dim() != tdim {
        return Err(Error::Shape(format!(
            "{what}: expected (p={p}, q={q_}) over {n:?} into {tgt:?} of dim {tdim}, got (p={}, q={}) over ({}, {}) into {:?} of dim {}",
            t.p, t.q, t.n0, t.n1, t.target, t.target_dim()
        )));
    }
    Ok(())
}

impl Lie2Algebra {
    pub fn new(space: TwoTermSpace, l2_00: MultiTensor, l2_01: MultiTensor, l3: MultiTensor) -> Result<Self> {
        let n = (space.dim0, space.dim1);
        expect_shape(&l2_00, 2, 0, n, Target::V0, n.0, "l2 on g0")?;
        expect_shape(&l2_01, 1, 1, n, Target::V1, n.1, "l2 on g0 x g1")?;
        expect_shape(&l3, 3, 0, n, Target::V1, n.1, "l3")?;
        Ok(Self { space, l2_00, l2_01, l3 })
    }

    /// All brackets zero, differential given.
    pub fn abelian(space: TwoTermSpace) -> Self {
        let (n0, n1) = (space.dim0, space.dim1);
        Self {
            l2_00: MultiTensor::zero(2, 0, n0, n1, Target::V0, n0),
            l2_01: MultiTensor::zero(1, 1, n0, n1, Target::V1, n1),
            l3: MultiTensor::zero(3, 0, n0, n1, Target::V1, n1),
            space,
        }
    }

    /// An ordinary Lie algebra (`g₁ = 0`) from `[e_i, e_j] = Σ c e_k` entries.
    pub fn from_lie_algebra(n: usize, brackets: &[(usize, usize, usize, Rational)]) -> Self {
        let mut g = Self::abelian(TwoTermSpace::plain(n, 0));
        for (i, j, k, c) in brackets {
            let mut v = zero_vec(n);
            v[*k] = c.clone();
            g.l2_00.add_basis(&[*i, *j], &[], &v);
        }
        g
    }

    pub fn n0(&self) -> usize {
        self.space.dim0
    }

    pub fn n1(&self) -> usize {
        self.space.dim1
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.space.dim0, self.space.dim1)
    }

    pub fn is_strict(&self) -> bool {
        self.l3.is_zero()
    }

    pub fn is_skeletal(&self) -> bool {
        self.space.diff.is_zero()
    }

    pub fn d(&self, a: &[Rational]) -> QVec {
        self.space.diff.mul_vec(a)
    }

    pub fn br00(&self, x: &[Rational], y: &[Rational]) -> QVec {
        self.l2_00.eval(&[x, y], &[])
    }

    pub fn br01(&self, x: &[Rational], a: &[Rational]) -> QVec {
        self.l2_01.eval(&[x], &[a])
    }

    pub fn l3v(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> QVec {
        self.l3.eval(&[x, y, z], &[])
    }

    pub fn e0(&self, i: usize) -> QVec {
        unit_vec(self.n0(), i)
    }

    pub fn e1(&self, i: usize) -> QVec {
        unit_vec(self.n1(), i)
    }

    /// Matrix of `[x, ·]` on `g₀`.
    pub fn ad00(&self, x: &[Rational]) -> RationalMatrix {
        let cols: Vec<QVec> = (0..self.n0()).map(|j| self.br00(x, &self.e0(j))).collect();
        RationalMatrix::from_columns(&cols, self.n0())
    }

    /// Matrix of `[x, ·]` on `g₁`.
    pub fn ad01(&self, x: &[Rational]) -> RationalMatrix {
        let cols: Vec<QVec> = (0..self.n1()).map(|j| self.br01(x, &self.e1(j))).collect();
        RationalMatrix::from_columns(&cols, self.n1())
    }

    /// Matrix of `[a, ·] : g₀ → g₁`, i.e. `y ↦ −l₂(y, a)`.
    pub fn ad10(&self, a: &[Rational]) -> RationalMatrix {
        let cols: Vec<QVec> = (0..self.n0())
            .map(|j| self.br01(&self.e0(j), a).into_iter().map(|v| -v).collect())
            .collect();
        RationalMatrix::from_columns(&cols, self.n1())
    }

    /// The graded-bracket view used by the identity checker.
    pub fn to_linf(&self) -> LInf {
        let (n0, n1) = self.dims();
        let mut l = LInf::new(vec![n0, n1], 3);
        let tot = n0 + n1;
        let embed = |v: &[Rational], deg: usize| -> QVec {
            let mut w = zero_vec(tot);
            let off = if deg == 0 { 0 } else { n0 };
            for (i, c) in v.iter().enumerate() {
                w[off + i] = c.clone();
            }
            w
        };
        for a in 0..n1 {
            let v = self.space.diff.column(a);
            if !is_zero_vec(&v) {
                l.set(&[n0 + a], embed(&v, 0));
            }
        }
        for (xs, _) in self.l2_00.basis_tuples() {
            let v = self.l2_00.eval_basis(&xs, &[]);
            if !is_zero_vec(&v) {
                l.set(&xs, embed(&v, 0));
            }
        }
        for x in 0..n0 {
            for a in 0..n1 {
                let v = self.l2_01.eval_basis(&[x], &[a]);
                if !is_zero_vec(&v) {
                    l.set(&[x, n0 + a], embed(&v, 1));
                }
            }
        }
        for (xs, _) in self.l3.basis_tuples() {
            let v = self.l3.eval_basis(&xs, &[]);
            if !is_zero_vec(&v) {
                l.set(&xs, embed(&v, 1));
            }
        }
        l
    }

    /// Isomorphic copy in new coordinates `x' = P₀x`, `a' = P₁a`.
    pub fn transport(&self, p0: &RationalMatrix, p1: &RationalMatrix) -> Result<Self> {
        let i0 = p0.inverse()?;
        let i1 = p1.inverse()?;
        let space = TwoTermSpace::new(self.n0(), self.n1(), p0.mul(&self.space.diff).mul(&i1))?;
        let l2_00 = self.l2_00.pullback(&i0, &i1).post_compose(p0, Target::V0);
        let l2_01 = self.l2_01.pullback(&i0, &i1).post_compose(p1, Target::V1);
        let l3 = self.l3.pullback(&i0, &i1).post_compose(p1, Target::V1);
        Self::new(space, l2_00, l2_01, l3)
    }

    /// Restriction to a graded subspace closed under all operations, in the
    /// coordinates of the subspace's echelon basis.
    pub fn restrict(&self, sub: &GradedSubspace) -> Result<Self> {
        let b0 = sub.s0.basis().to_vec();
        let b1 = sub.s1.basis().to_vec();
        let (k0, k1) = (b0.len(), b1.len());
        let c0 = |v: &[Rational], what: &str| -> Result<QVec> {
            sub.s0.coordinates(v).ok_or_else(|| Error::refused("closure of the subspace", what.to_string()))
        };
        let c1 = |v: &[Rational], what: &str| -> Result<QVec> {
            sub.s1.coordinates(v).ok_or_else(|| Error::refused("closure of the subspace", what.to_string()))
        };
        let mut d = RationalMatrix::zeros(k0, k1);
        for j in 0..k1 {
            d.set_column(j, &c0(&self.d(&b1[j]), &format!("d(b1[{j}])"))?);
        }
        let space = TwoTermSpace::new(k0, k1, d)?;
        let mut out = Self::abelian(space);
        for (c, (xs, _)) in out.l2_00.basis_tuples().into_iter().enumerate() {
            let v = self.br00(&b0[xs[0]], &b0[xs[1]]);
            out.l2_00.set_column(c, &c0(&v, &format!("l2(b0[{}], b0[{}])", xs[0], xs[1]))?);
        }
        for (c, (xs, as_)) in out.l2_01.basis_tuples().into_iter().enumerate() {
            let v = self.br01(&b0[xs[0]], &b1[as_[0]]);
            out.l2_01.set_column(c, &c1(&v, &format!("l2(b0[{}], b1[{}])", xs[0], as_[0]))?);
        }
        for (c, (xs, _)) in out.l3.basis_tuples().into_iter().enumerate() {
            let v = self.l3v(&b0[xs[0]], &b0[xs[1]], &b0[xs[2]]);
            out.l3.set_column(c, &c1(&v, &format!("l3 on b0{xs:?}"))?);
        }
        Ok(out)
    }
}

/// Evaluates the homotopy Jacobi identities for `n = 1..4`.
pub fn check_lie2(g: &Lie2Algebra) -> Verdict {
    let mut v = Verdict::new();
    g.to_linf().check_identities(4, &mut v);
    v
}

/// A homomorphism `(φ₀, φ₁, φ₂)` of Lie 2-algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie2Hom {
    pub source: Lie2Algebra,
    pub target: Lie2Algebra,
    pub maps: GradedMap,
    /// `Λ²(source g₀) → target g₁`
    pub phi2: MultiTensor,
}

impl Lie2Hom {
    pub fn new(source: Lie2Algebra, target: Lie2Algebra, maps: GradedMap, phi2: MultiTensor) -> Result<Self> {
        if maps.source_dims() != source.dims() || maps.target_dims() != target.dims() {
            return Err(Error::Shape(format!(
                "graded map {:?} -> {:?} between algebras {:?} -> {:?}",
                maps.source_dims(),
                maps.target_dims(),
                source.dims(),
                target.dims()
            )));
        }
        expect_shape(&phi2, 2, 0, source.dims(), Target::V1, target.n1(), "phi2")?;
        Ok(Self { source, target, maps, phi2 })
    }

    /// Strong homomorphism with `φ₂ = 0`.
    pub fn strong(source: Lie2Algebra, target: Lie2Algebra, maps: GradedMap) -> Result<Self> {
        let phi2 = MultiTensor::zero(2, 0, source.n0(), source.n1(), Target::V1, target.n1());
        Self::new(source, target, maps, phi2)
    }

    pub fn identity(g: &Lie2Algebra) -> Self {
        Self::strong(g.clone(), g.clone(), GradedMap::identity(g.n0(), g.n1())).expect("identity shapes")
    }

    pub fn is_strong(&self) -> bool {
        self.phi2.is_zero()
    }

    pub fn phi0(&self, x: &[Rational]) -> QVec {
        self.maps.m0.mul_vec(x)
    }

    pub fn phi1(&self, a: &[Rational]) -> QVec {
        self.maps.m1.mul_vec(a)
    }
}

/// Checks the four homomorphism conditions on all basis tuples.
pub fn check_hom(f: &Lie2Hom) -> Verdict {
    let g = &f.source;
    let h = &f.target;
    let mut v = Verdict::new();
    let (n0, n1) = g.dims();

    let mut t = Tally::new();
    for a in 0..n1 {
        let ea = g.e1(a);
        let lhs = h.d(&f.phi1(&ea));
        let rhs = f.phi0(&g.d(&ea));
        t.case(lhs == rhs, || format!("a{a}"));
    }
    t.into_verdict(&mut v, HOM_CONDITIONS[0]);

    let mut t = Tally::new();
    for x in 0..n0 {
        for y in x + 1..n0 {
            let (ex, ey) = (g.e0(x), g.e0(y));
            let lhs = sub_vec(&f.phi0(&g.br00(&ex, &ey)), &h.br00(&f.phi0(&ex), &f.phi0(&ey)));
            let rhs = h.d(&f.phi2.eval_basis(&[x, y], &[]));
            t.case(lhs == rhs, || format!("(x{x}, x{y})"));
        }
    }
    t.into_verdict(&mut v, HOM_CONDITIONS[1]);

    let mut t = Tally::new();
    for x in 0..n0 {
        for a in 0..n1 {
            let (ex, ea) = (g.e0(x), g.e1(a));
            let lhs = sub_vec(&f.phi1(&g.br01(&ex, &ea)), &h.br01(&f.phi0(&ex), &f.phi1(&ea)));
            let rhs = f.phi2.eval(&[&ex, &g.d(&ea)], &[]);
            t.case(lhs == rhs, || format!("(x{x}, a{a})"));
        }
    }
    t.into_verdict(&mut v, HOM_CONDITIONS[2]);

    let mut t = Tally::new();
    for x in 0..n0 {
        for y in x + 1..n0 {
            for z in y + 1..n0 {
                let e = [g.e0(x), g.e0(y), g.e0(z)];
                let img: Vec<QVec> = e.iter().map(|u| f.phi0(u)).collect();
                let mut lhs = h.l3v(&img[0], &img[1], &img[2]);
                let mut rhs = f.phi1(&g.l3v(&e[0], &e[1], &e[2]));
                for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                    let p2 = f.phi2.eval(&[&e[j], &e[k]], &[]);
                    lhs = add_vec(&lhs, &h.br01(&img[i], &p2));
                    let br = g.br00(&e[i], &e[j]);
                    rhs = add_vec(&rhs, &f.phi2.eval(&[&br, &e[k]], &[]));
                }
                t.case(lhs == rhs, || format!("(x{x}, x{y}, x{z})"));
            }
        }
    }
    t.into_verdict(&mut v, HOM_CONDITIONS[3]);
    v
}

/// `ψ ∘ φ` with `(ψ∘φ)₂ = ψ₁∘φ₂ + ψ₂∘(φ₀∧φ₀)`.
pub fn compose(psi: &Lie2Hom, phi: &Lie2Hom) -> Result<Lie2Hom> {
    if phi.target.dims() != psi.source.dims() {
        return Err(Error::Shape("composition of non-composable homomorphisms".into()));
    }
    let maps = psi.maps.compose(&phi.maps);
    let a = phi.phi2.post_compose(&psi.maps.m1, Target::V1);
    let b = psi.phi2.pullback(&phi.maps.m0, &phi.maps.m1);
    Lie2Hom::new(phi.source.clone(), psi.target.clone(), maps, a.add(&b))
}

/// The Lie 2-algebra `g'` on the same spaces for which `(id, id, φ₂) : g' → g`
/// is a homomorphism: `l₂' = l₂ + dφ₂` on `g₀`, `l₂'(x,a) = l₂(x,a) + φ₂(x,da)`,
/// `l₃' = l₃ + Σ_{c.p.} (l₂(x, φ₂(y,z)) − φ₂(l₂'(x,y), z))`.
pub fn gauge_pullback(g: &Lie2Algebra, phi2: &MultiTensor) -> Result<(Lie2Algebra, Lie2Hom)> {
    let (n0, n1) = g.dims();
    expect_shape(phi2, 2, 0, (n0, n1), Target::V1, n1, "phi2")?;
    let mut h = g.clone();
    h.l2_00 = g.l2_00.add(&phi2.post_compose(&g.space.diff, Target::V0));
    h.l2_01 = MultiTensor::from_fn(1, 1, n0, n1, Target::V1, n1, |xs, as_| {
        let da = g.d(&g.e1(as_[0]));
        add_vec(&g.l2_01.eval_basis(xs, as_), &phi2.eval(&[&g.e0(xs[0]), &da], &[]))
    });
    let l2n = h.l2_00.clone();
    h.l3 = MultiTensor::from_fn(3, 0, n0, n1, Target::V1, n1, |xs, _| {
        let mut r = g.l3.eval_basis(xs, &[]);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let p = phi2.eval_basis(&[xs[j], xs[k]], &[]);
            r = add_vec(&r, &g.br01(&g.e0(xs[i]), &p));
            let br = l2n.eval_basis(&[xs[i], xs[j]], &[]);
            r = sub_vec(&r, &phi2.eval(&[&br, &g.e0(xs[k])], &[]));
        }
        r
    });
    let hom = Lie2Hom::new(h.clone(), g.clone(), GradedMap::identity(n0, n1), phi2.clone())?;
    Ok((h, hom))
}

/// A pair of subspaces `(h₀ ⊂ g₀, h₁ ⊂ g₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    pub s0: Subspace,
    pub s1: Subspace,
}

impl GradedSubspace {
    pub fn new(s0: Subspace, s1: Subspace) -> Self {
        Self { s0, s1 }
    }

    pub fn span(n0: usize, v0: &[QVec], n1: usize, v1: &[QVec]) -> Self {
        Self { s0: Subspace::span(n0, v0), s1: Subspace::span(n1, v1) }
    }

    pub fn zero(g: &Lie2Algebra) -> Self {
        Self { s0: Subspace::zero(g.n0()), s1: Subspace::zero(g.n1()) }
    }

    pub fn full(g: &Lie2Algebra) -> Self {
        Self { s0: Subspace::full(g.n0()), s1: Subspace::full(g.n1()) }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.s0.dim(), self.s1.dim())
    }

    pub fn is_d_closed(&self, g: &Lie2Algebra) -> bool {
        self.s1.basis().iter().all(|b| self.s0.contains(&g.d(b)))
    }
}

/// Checks `l₂(h∧g) ⊂ h` and `l₃(h₀∧g₀∧g₀) ⊂ h₁`.
pub fn is_ideal(g: &Lie2Algebra, h: &GradedSubspace) -> Result<Verdict> {
    if !h.is_d_closed(g) {
        return Err(Error::refused("d(h₁) ⊂ h₀", "a basis vector of h₁"));
    }
    let mut v = Verdict::new();
    let (n0, n1) = g.dims();
    let mut t = Tally::new();
    for (i, b) in h.s0.basis().iter().enumerate() {
        for y in 0..n0 {
            t.case(h.s0.contains(&g.br00(b, &g.e0(y))), || format!("(h0[{i}], x{y})"));
        }
    }
    t.into_verdict(&mut v, "l₂(h₀, g₀) ⊂ h₀");
    let mut t = Tally::new();
    for (i, b) in h.s0.basis().iter().enumerate() {
        for a in 0..n1 {
            t.case(h.s1.contains(&g.br01(b, &g.e1(a))), || format!("(h0[{i}], a{a})"));
        }
    }
    t.into_verdict(&mut v, "l₂(h₀, g₁) ⊂ h₁");
    let mut t = Tally::new();
    for (i, b) in h.s1.basis().iter().enumerate() {
        for x in 0..n0 {
            t.case(h.s1.contains(&g.br01(&g.e0(x), b)), || format!("(x{x}, h1[{i}])"));
        }
    }
    t.into_verdict(&mut v, "l₂(g₀, h₁) ⊂ h₁");
    let mut t = Tally::new();
    for (i, b) in h.s0.basis().iter().enumerate() {
        for y in 0..n0 {
            for z in y + 1..n0 {
                let w = g.l3v(b, &g.e0(y), &g.e0(z));
                t.case(h.s1.contains(&w), || format!("(h0[{i}], x{y}, x{z})"));
            }
        }
    }
    t.into_verdict(&mut v, "l₃(h₀, g₀, g₀) ⊂ h₁");
    Ok(v)
}

/// Checks closure of a graded subspace under `d`, `l₂`, `l₃`.
pub fn is_subalgebra(g: &Lie2Algebra, h: &GradedSubspace) -> Verdict {
    let mut v = Verdict::new();
    v.expect("d(h₁) ⊂ h₀", h.is_d_closed(g), || "a basis vector of h₁".into());
    let b0 = h.s0.basis();
    let b1 = h.s1.basis();
    let mut t = Tally::new();
    for i in 0..b0.len() {
        for j in i + 1..b0.len() {
            t.case(h.s0.contains(&g.br00(&b0[i], &b0[j])), || format!("(h0[{i}], h0[{j}])"));
        }
        for (k, b) in b1.iter().enumerate() {
            t.case(h.s1.contains(&g.br01(&b0[i], b)), || format!("(h0[{i}], h1[{k}])"));
        }
    }
    t.into_verdict(&mut v, "l₂ closure");
    let mut t = Tally::new();
    for i in 0..b0.len() {
        for j in i + 1..b0.len() {
            for k in j + 1..b0.len() {
                t.case(h.s1.contains(&g.l3v(&b0[i], &b0[j], &b0[k])), || format!("(h0[{i}], h0[{j}], h0[{k}])"));
            }
        }
    }
    t.into_verdict(&mut v, "l₃ closure");
    v
}

/// Result of [`quotient`].
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Lie2Algebra,
    /// The strong projection `g → g/h`.
    pub projection: Lie2Hom,
    /// Inclusion of the echelon complement; a linear section of the projection.
    pub section: GradedMap,
}

/// `g/h` on the complement of `h`, with the strong projection.
pub fn quotient(g: &Lie2Algebra, h: &GradedSubspace) -> Result<Quotient> {
    let verdict = is_ideal(g, h)?;
    if let Some(c) = verdict.first_failure() {
        return Err(Error::refused(c.name.clone(), c.witness.clone().unwrap_or_default()));
    }
    let (n0, n1) = g.dims();
    let c0 = quotient_basis(h.s0.basis(), n0)?;
    let c1 = quotient_basis(h.s1.basis(), n1)?;
    let (k0, k1) = (c0.basis.len(), c1.basis.len());
    let s0 = RationalMatrix::from_columns(&c0.basis, n0);
    let s1 = RationalMatrix::from_columns(&c1.basis, n1);
    let (p0, p1) = (&c0.projection, &c1.projection);
    let space = TwoTermSpace::new(k0, k1, p0.mul(&g.space.diff).mul(&s1))?;
    let l2_00 = g.l2_00.pullback(&s0, &s1).post_compose(p0, Target::V0);
    let l2_01 = g.l2_01.pullback(&s0, &s1).post_compose(p1, Target::V1);
    let l3 = g.l3.pullback(&s0, &s1).post_compose(p1, Target::V1);
    let algebra = Lie2Algebra::new(space, l2_00, l2_01, l3)?;
    let projection = Lie2Hom::strong(g.clone(), algebra.clone(), GradedMap::new(p0.clone(), p1.clone()))?;
    Ok(Quotient { algebra, projection, section: GradedMap::new(s0, s1) })
}

/// `ker φ = ker φ₀ ⊕ ker φ₁`, after checking `φ₂(ker φ₀ ∧ g₀) = 0`.
pub fn hom_kernel(f: &Lie2Hom) -> Result<GradedSubspace> {
    let g = &f.source;
    let k0 = kernel_basis(&f.maps.m0);
    let k1 = kernel_basis(&f.maps.m1);
    for (i, b) in k0.iter().enumerate() {
        for y in 0..g.n0() {
            if !is_zero_vec(&f.phi2.eval(&[b, &g.e0(y)], &[])) {
                return Err(Error::refused("φ₂(ker φ₀ ∧ g₀) = 0", format!("(ker0[{i}], x{y})")));
            }
        }
    }
    Ok(GradedSubspace::span(g.n0(), &k0, g.n1(), &k1))
}

/// `Img φ = Img φ₀ ⊕ Img φ₁`, after checking `Img φ₂ ⊂ Img φ₁`.
pub fn hom_image(f: &Lie2Hom) -> Result<GradedSubspace> {
    let h = &f.target;
    let i0 = image_basis(&f.maps.m0);
    let i1 = image_basis(&f.maps.m1);
    let im1 = Subspace::span(h.n1(), &i1);
    for (xs, _) in f.phi2.basis_tuples() {
        if !im1.contains(&f.phi2.eval_basis(&xs, &[])) {
            return Err(Error::refused("Img φ₂ ⊂ Img φ₁", format!("(x{}, x{})", xs[0], xs[1])));
        }
    }
    Ok(GradedSubspace::new(Subspace::span(h.n0(), &i0), im1))
}

/// Verifies `g / ker φ ≅ Img φ` through the induced homomorphism.
pub fn first_iso_check(f: &Lie2Hom) -> Result<Verdict> {
    let ker = hom_kernel(f)?;
    let img = hom_image(f)?;
    let mut v = Verdict::new();
    let kv = is_ideal(&f.source, &ker)?;
    v.absorb("kernel is an ideal", kv);
    let sv = is_subalgebra(&f.target, &img);
    let closed = sv.passed();
    v.absorb("image is a subalgebra", sv);
    if !closed {
        return Ok(v);
    }
    let quo = quotient(&f.source, &ker)?;
    let imalg = f.target.restrict(&img)?;
    let (q0, q1) = quo.algebra.dims();
    v.expect("dim g/ker = dim Img", (q0, q1) == imalg.dims(), || {
        format!("{:?} vs {:?}", (q0, q1), imalg.dims())
    });
    if (q0, q1) != imalg.dims() {
        return Ok(v);
    }
    // induced maps in image coordinates
    let coords = |sub: &Subspace, m: &RationalMatrix, s: &RationalMatrix| -> RationalMatrix {
        let img_cols: Vec<QVec> = m
            .mul(s)
            .columns()
            .iter()
            .map(|c| sub.coordinates(c).expect("image vector"))
            .collect();
        RationalMatrix::from_columns(&img_cols, sub.dim())
    };
    let m0 = coords(&img.s0, &f.maps.m0, &quo.section.m0);
    let m1 = coords(&img.s1, &f.maps.m1, &quo.section.m1);
    let p2 = f.phi2.pullback(&quo.section.m0, &quo.section.m1);
    let p2 = MultiTensor::from_fn(2, 0, q0, q1, Target::V1, img.s1.dim(), |xs, _| {
        img.s1.coordinates(&p2.eval_basis(xs, &[])).expect("Img φ₂ ⊂ Img φ₁")
    });
    let induced = Lie2Hom::new(quo.algebra.clone(), imalg, GradedMap::new(m0.clone(), m1.clone()), p2)?;
    v.absorb("induced map", check_hom(&induced));
    v.expect("induced map is bijective", m0.inverse().is_ok() && m1.inverse().is_ok(), || {
        "induced linear maps are singular".into()
    });
    Ok(v)
}

/// A strict Lie 3-algebra on `V₂ → V₁ → V₀`: `l₁` is the differential,
/// `l₂` has degree 0, `l₃` degree 1, and `l₄ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie3Algebra {
    pub space: ThreeTermSpace,
    brackets: LInf,
}

impl Lie3Algebra {
    /// `brackets` must carry `l₂` and `l₃` only, in admissible degrees; `l₁`
    /// is filled from the space.
    pub fn new(space: ThreeTermSpace, mut brackets: LInf) -> Result<Self> {
        if brackets.dims() != space.dims() {
            return Err(Error::Shape("bracket dimensions differ from the complex".into()));
        }
        if brackets.max_arity() != 3 {
            return Err(Error::Shape("a strict Lie 3-algebra has brackets up to arity 3".into()));
        }
        for k in [2usize, 3] {
            for (t, v) in brackets.entries(k) {
                let deg: usize = t.iter().map(|&g| brackets.degree_of(g)).sum::<usize>() + k - 2;
                let ok = (0..v.len()).all(|i| v[i].is_zero() || brackets.degree_of(i) == deg);
                if !ok {
                    return Err(Error::Shape(format!("l{k} on {t:?} leaves degree {deg}")));
                }
            }
        }
        if !brackets.entries(1).is_empty() {
            return Err(Error::Shape("pass l1 through the complex, not the brackets".into()));
        }
        let [d0, d1, _] = space.dims();
        for j in 0..space.dim1 {
            let mut w = zero_vec(brackets.total_dim());
            for i in 0..d0 {
                w[i] = space.diff10.get(i, j).clone();
            }
            brackets.set(&[d0 + j], w);
        }
        for j in 0..space.dim2 {
            let mut w = zero_vec(brackets.total_dim());
            for i in 0..d1 {
                w[d0 + i] = space.diff21.get(i, j).clone();
            }
            brackets.set(&[d0 + d1 + j], w);
        }
        Ok(Self { space, brackets })
    }

    pub fn brackets(&self) -> &LInf {
        &self.brackets
    }

    /// Adds `delta` to one structure constant (for mutation tests).
    pub fn perturb(&mut self, tuple: &[usize], out: usize, delta: &Rational) {
        self.brackets.perturb(tuple, out, delta);
    }

    /// Canonical nonzero entries `(arity, tuple, out index, value)` of `l₂`, `l₃`.
    pub fn entries(&self) -> Vec<(usize, Vec<usize>, usize, Rational)> {
        let mut out = Vec::new();
        for k in [2usize, 3] {
            for (t, v) in self.brackets.entries(k) {
                for (i, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        out.push((k, t.clone(), i, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn l3_is_zero(&self) -> bool {
        self.brackets.entries(3).is_empty()
    }
}

/// Evaluates the homotopy Jacobi identities for `n = 1..5` with `l₄ = 0`.
pub fn check_lie3_strict(t: &Lie3Algebra) -> Verdict {
    let mut v = Verdict::new();
    t.brackets.check_identities(5, &mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::q;

    fn aff1() -> Lie2Algebra {
        Lie2Algebra::from_lie_algebra(2, &[(0, 1, 1, q(1))])
    }

    #[test]
    fn aff1_passes_and_mutant_fails() {
        assert!(check_lie2(&aff1()).passed());
        let g = Lie2Algebra::from_lie_algebra(3, &[(0, 1, 1, q(1)), (0, 2, 2, q(1)), (1, 2, 0, q(1))]);
        let v = check_lie2(&g);
        assert!(!v.passed());
        assert!(v.failures()[0].contains("n=3"));
    }

    #[test]
    fn ideal_and_quotient_of_aff1() {
        let g = aff1();
        let h = GradedSubspace::span(2, &[unit_vec(2, 1)], 0, &[]);
        assert!(is_ideal(&g, &h).unwrap().passed());
        let bad = GradedSubspace::span(2, &[unit_vec(2, 0)], 0, &[]);
        assert!(!is_ideal(&g, &bad).unwrap().passed());
        let quo = quotient(&g, &h).unwrap();
        assert_eq!(quo.algebra.dims(), (1, 0));
        assert!(check_hom(&quo.projection).passed());
        assert_eq!(hom_kernel(&quo.projection).unwrap(), h);
        assert!(first_iso_check(&quo.projection).unwrap().passed());
    }
}
