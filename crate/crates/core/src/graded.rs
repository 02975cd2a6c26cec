//! Graded vector spaces, graded maps, and multilinear tensors on
//! `Λᵖg₀ ⊗ ⊙ᑫg₁` with a fixed lexicographic basis.
//!
//! Elements of `g₀` have degree 0 and elements of `g₁` degree 1. Tensors are
//! stored on canonically sorted index tuples: strictly increasing in the
//! `g₀` block, weakly increasing in the `g₁` block.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{axpy, is_zero_vec, zero_vec, QVec, Rational, RationalMatrix};

/// `V₁ --∂--> V₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermSpace {
    pub dim0: usize,
    pub dim1: usize,
    /// `dim0 × dim1`
    pub diff: RationalMatrix,
}

impl TwoTermSpace {
    pub fn new(dim0: usize, dim1: usize, diff: RationalMatrix) -> Result<Self> {
        if diff.shape() != (dim0, dim1) {
            return Err(Error::Shape(format!(
                "differential is {:?}, expected ({dim0}, {dim1})",
                diff.shape()
            )));
        }
        Ok(Self { dim0, dim1, diff })
    }

    /// Zero differential.
    pub fn plain(dim0: usize, dim1: usize) -> Self {
        Self { dim0, dim1, diff: RationalMatrix::zeros(dim0, dim1) }
    }

    pub fn dim(&self, degree: usize) -> usize {
        match degree {
            0 => self.dim0,
            1 => self.dim1,
            _ => 0,
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dim0 + self.dim1
    }
}

/// `V₂ --> V₁ --> V₀` with composite zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTermSpace {
    pub dim0: usize,
    pub dim1: usize,
    pub dim2: usize,
    pub diff10: RationalMatrix,
    pub diff21: RationalMatrix,
}

impl ThreeTermSpace {
    pub fn new(
        dim0: usize,
        dim1: usize,
        dim2: usize,
        diff10: RationalMatrix,
        diff21: RationalMatrix,
    ) -> Result<Self> {
        if diff10.shape() != (dim0, dim1) || diff21.shape() != (dim1, dim2) {
            return Err(Error::Shape("three-term differentials have wrong shape".into()));
        }
        if !diff10.mul(&diff21).is_zero() {
            return Err(Error::Shape("three-term differential does not square to zero".into()));
        }
        Ok(Self { dim0, dim1, dim2, diff10, diff21 })
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.dim0, self.dim1, self.dim2]
    }
}

/// A pair of linear maps `(m0, m1)` between two-term spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub m0: RationalMatrix,
    pub m1: RationalMatrix,
}

impl GradedMap {
    pub fn new(m0: RationalMatrix, m1: RationalMatrix) -> Self {
        Self { m0, m1 }
    }

    pub fn identity(dim0: usize, dim1: usize) -> Self {
        Self { m0: RationalMatrix::identity(dim0), m1: RationalMatrix::identity(dim1) }
    }

    pub fn zero(src: (usize, usize), tgt: (usize, usize)) -> Self {
        Self {
            m0: RationalMatrix::zeros(tgt.0, src.0),
            m1: RationalMatrix::zeros(tgt.1, src.1),
        }
    }

    pub fn source_dims(&self) -> (usize, usize) {
        (self.m0.cols(), self.m1.cols())
    }

    pub fn target_dims(&self) -> (usize, usize) {
        (self.m0.rows(), self.m1.rows())
    }

    pub fn component(&self, degree: usize) -> &RationalMatrix {
        if degree == 0 {
            &self.m0
        } else {
            &self.m1
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        GradedMap { m0: self.m0.mul(&other.m0), m1: self.m1.mul(&other.m1) }
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        GradedMap { m0: self.m0.add(&other.m0), m1: self.m1.add(&other.m1) }
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        GradedMap { m0: self.m0.sub(&other.m0), m1: self.m1.sub(&other.m1) }
    }

    /// `m0 ∘ ∂ = d ∘ m1`
    pub fn is_chain_map(&self, src: &TwoTermSpace, tgt: &TwoTermSpace) -> bool {
        self.m0.mul(&src.diff) == tgt.diff.mul(&self.m1)
    }
}

/// Bijection between canonically sorted `k`-tuples over `0..n` and flat indices.
///
/// Strict tuples are strictly increasing (exterior powers); weak tuples are
/// weakly increasing (symmetric powers). Order is lexicographic.
#[derive(Debug)]
pub struct BasisIndexer {
    pub n: usize,
    pub k: usize,
    pub strict: bool,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl BasisIndexer {
    fn build(n: usize, k: usize, strict: bool) -> Self {
        let mut tuples = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(
            n: usize,
            k: usize,
            strict: bool,
            start: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(n, k, strict, if strict { i + 1 } else { i }, cur, out);
                cur.pop();
            }
        }
        rec(n, k, strict, 0, &mut cur, &mut tuples);
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { n, k, strict, tuples, index }
    }

    /// Shared, cached indexer.
    pub fn get(n: usize, k: usize, strict: bool) -> Arc<BasisIndexer> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize, bool), Arc<BasisIndexer>>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("indexer cache poisoned");
        guard
            .entry((n, k, strict))
            .or_insert_with(|| Arc::new(BasisIndexer::build(n, k, strict)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Index of an already-sorted tuple.
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Number of multisets of size `k` from `n` elements.
pub fn multiset_count(n: usize, k: usize) -> usize {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    binomial(n + k - 1, k)
}

/// Sign of a permutation given as a list of images.
pub fn perm_sign(perm: &[usize]) -> i32 {
    let mut inv = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `(i, n−i)`-unshuffles, as image lists `σ(0..n)` with their signs.
pub fn unshuffles(i: usize, n: usize) -> Vec<(Vec<usize>, i32)> {
    assert!(i <= n, "unshuffles({i}, {n})");
    let idx = BasisIndexer::get(n, i, true);
    idx.tuples()
        .iter()
        .map(|first| {
            let mut perm = first.clone();
            perm.extend((0..n).filter(|j| !first.contains(j)));
            let s = perm_sign(&perm);
            (perm, s)
        })
        .collect()
}

/// Koszul sign of the reordering `(x_{perm[0]}, …, x_{perm[n−1]})` of graded
/// elements with the given degrees: `(−1)^{|a||b|}` for every pair that
/// changes relative order. The plain permutation sign is not included.
pub fn koszul_sign(perm: &[usize], degrees: &[usize]) -> i32 {
    assert_eq!(perm.len(), degrees.len(), "koszul_sign arity");
    let mut s = 1;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && degrees[perm[a]] % 2 == 1 && degrees[perm[b]] % 2 == 1 {
                s = -s;
            }
        }
    }
    s
}

/// Which piece of a two-term target a tensor lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    V0,
    V1,
}

/// A multilinear map `Λᵖg₀ ⊗ ⊙ᑫg₁ → target`, stored as a matrix from the
/// canonical basis of the source to the target.
#[derive(Clone)]
pub struct MultiTensor {
    pub p: usize,
    pub q: usize,
    pub n0: usize,
    pub n1: usize,
    pub target: Target,
    coeffs: RationalMatrix,
    ix0: Arc<BasisIndexer>,
    ix1: Arc<BasisIndexer>,
}

impl PartialEq for MultiTensor {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p
            && self.q == o.q
            && self.n0 == o.n0
            && self.n1 == o.n1
            && self.target == o.target
            && self.coeffs == o.coeffs
    }
}

impl Eq for MultiTensor {}

impl std::fmt::Debug for MultiTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MultiTensor(p={}, q={}, dims=({}, {}), {:?}, {:?})",
            self.p, self.q, self.n0, self.n1, self.target, self.coeffs
        )
    }
}

/// Sorts a strict block in place; returns the sign, or `None` on a repeat.
pub fn sort_strict(t: &mut [usize]) -> Option<i32> {
    let mut s = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            s = -s;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(s)
    }
}

impl MultiTensor {
    pub fn zero(p: usize, q: usize, n0: usize, n1: usize, target: Target, tdim: usize) -> Self {
        let ix0 = BasisIndexer::get(n0, p, true);
        let ix1 = BasisIndexer::get(n1, q, false);
        let coeffs = RationalMatrix::zeros(tdim, ix0.len() * ix1.len());
        Self { p, q, n0, n1, target, coeffs, ix0, ix1 }
    }

    pub fn from_coeffs(
        p: usize,
        q: usize,
        n0: usize,
        n1: usize,
        target: Target,
        coeffs: RationalMatrix,
    ) -> Result<Self> {
        let mut t = Self::zero(p, q, n0, n1, target, coeffs.rows());
        if coeffs.cols() != t.coeffs.cols() {
            return Err(Error::Shape(format!(
                "tensor (p={p}, q={q}) over dims ({n0}, {n1}) needs {} columns, got {}",
                t.coeffs.cols(),
                coeffs.cols()
            )));
        }
        t.coeffs = coeffs;
        Ok(t)
    }

    pub fn coeffs(&self) -> &RationalMatrix {
        &self.coeffs
    }

    pub fn target_dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn ncols(&self) -> usize {
        self.coeffs.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn same_shape(&self, o: &Self) -> bool {
        self.p == o.p
            && self.q == o.q
            && self.n0 == o.n0
            && self.n1 == o.n1
            && self.target == o.target
            && self.target_dim() == o.target_dim()
    }

    /// Canonical basis tuples: `(g₀ indices, g₁ indices)` for each column.
    pub fn basis_tuples(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::with_capacity(self.ncols());
        for a in self.ix0.tuples() {
            for b in self.ix1.tuples() {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }

    pub fn column_of(&self, xs: &[usize], as_: &[usize]) -> usize {
        self.ix0.index_of(xs).expect("canonical g0 tuple") * self.ix1.len()
            + self.ix1.index_of(as_).expect("canonical g1 tuple")
    }

    /// Column and sign for an arbitrary basis tuple; `None` if it vanishes.
    pub fn locate(&self, xs: &[usize], as_: &[usize]) -> Option<(usize, i32)> {
        let mut x = xs.to_vec();
        let s = sort_strict(&mut x)?;
        let mut a = as_.to_vec();
        a.sort_unstable();
        Some((self.column_of(&x, &a), s))
    }

    /// Value on basis vectors (any order).
    pub fn eval_basis(&self, xs: &[usize], as_: &[usize]) -> QVec {
        match self.locate(xs, as_) {
            None => zero_vec(self.target_dim()),
            Some((c, s)) => {
                let col = self.coeffs.column(c);
                if s < 0 {
                    col.into_iter().map(|v| -v).collect()
                } else {
                    col
                }
            }
        }
    }

    /// Adds `v` to the value on the given basis tuple (any order), keeping
    /// the tensor antisymmetric/symmetric.
    pub fn add_basis(&mut self, xs: &[usize], as_: &[usize], v: &[Rational]) {
        assert_eq!(v.len(), self.target_dim());
        if let Some((c, s)) = self.locate(xs, as_) {
            for (i, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if s > 0 {
                    self.coeffs.add_at(i, c, x);
                } else {
                    self.coeffs.add_at(i, c, &-x);
                }
            }
        }
    }

    /// Sets the value on a canonical column.
    pub fn set_column(&mut self, c: usize, v: &[Rational]) {
        self.coeffs.set_column(c, v);
    }

    pub fn column(&self, c: usize) -> QVec {
        self.coeffs.column(c)
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn evaluate(&self, xs: &[&[Rational]], as_: &[&[Rational]]) -> Result<QVec> {
        if xs.len() != self.p || as_.len() != self.q {
            return Err(Error::Arity {
                expected: format!("({}, {})", self.p, self.q),
                got: format!("({}, {})", xs.len(), as_.len()),
            });
        }
        if xs.iter().any(|x| x.len() != self.n0) || as_.iter().any(|a| a.len() != self.n1) {
            return Err(Error::Shape("argument vector has wrong length".into()));
        }
        Ok(self.eval(xs, as_))
    }

    /// Evaluation without arity checks (internal hot path).
    pub fn eval(&self, xs: &[&[Rational]], as_: &[&[Rational]]) -> QVec {
        let mut out = zero_vec(self.target_dim());
        if self.coeffs.is_zero() {
            return out;
        }
        let supp = |v: &[Rational]| -> Vec<(usize, Rational)> {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect()
        };
        let sx: Vec<_> = xs.iter().map(|v| supp(v)).collect();
        let sa: Vec<_> = as_.iter().map(|v| supp(v)).collect();
        if sx.iter().chain(sa.iter()).any(Vec::is_empty) {
            return out;
        }
        let all: Vec<&Vec<(usize, Rational)>> = sx.iter().chain(sa.iter()).collect();
        let mut idx = vec![0usize; all.len()];
        let mut ix = vec![0usize; all.len()];
        loop {
            let mut coef = Rational::one();
            for (k, &j) in idx.iter().enumerate() {
                ix[k] = all[k][j].0;
                coef *= &all[k][j].1;
            }
            if let Some((c, s)) = self.locate(&ix[..self.p], &ix[self.p..]) {
                if s < 0 {
                    coef = -coef;
                }
                for (i, o) in out.iter_mut().enumerate() {
                    let v = self.coeffs.get(i, c);
                    if !v.is_zero() {
                        *o += &coef * v;
                    }
                }
            }
            // odometer
            let mut k = all.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < all[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.same_shape(o), "tensor sum shape mismatch");
        let mut t = self.clone();
        t.coeffs = self.coeffs.add(&o.coeffs);
        t
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert!(self.same_shape(o), "tensor difference shape mismatch");
        let mut t = self.clone();
        t.coeffs = self.coeffs.sub(&o.coeffs);
        t
    }

    pub fn scale(&self, a: &Rational) -> Self {
        let mut t = self.clone();
        t.coeffs = self.coeffs.scale(a);
        t
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// `M ∘ t` for a linear map `M` on the target.
    pub fn post_compose(&self, m: &RationalMatrix, target: Target) -> Self {
        let mut t = Self::zero(self.p, self.q, self.n0, self.n1, target, m.rows());
        t.coeffs = m.mul(&self.coeffs);
        t
    }

    /// `t ∘ (A^{⊗p} ⊗ B^{⊗q})` for linear maps `A: g₀' → g₀`, `B: g₁' → g₁`.
    pub fn pullback(&self, a: &RationalMatrix, b: &RationalMatrix) -> Self {
        assert_eq!(a.rows(), self.n0);
        assert_eq!(b.rows(), self.n1);
        let mut t = Self::zero(self.p, self.q, a.cols(), b.cols(), self.target, self.target_dim());
        let acols = a.columns();
        let bcols = b.columns();
        for (c, (xs, as_)) in t.basis_tuples().into_iter().enumerate() {
            let xv: Vec<&[Rational]> = xs.iter().map(|&i| acols[i].as_slice()).collect();
            let av: Vec<&[Rational]> = as_.iter().map(|&i| bcols[i].as_slice()).collect();
            let v = self.eval(&xv, &av);
            if !is_zero_vec(&v) {
                t.coeffs.set_column(c, &v);
            }
        }
        t
    }

    /// Fills a tensor from a function on canonical basis tuples.
    pub fn from_fn(
        p: usize,
        q: usize,
        n0: usize,
        n1: usize,
        target: Target,
        tdim: usize,
        mut f: impl FnMut(&[usize], &[usize]) -> QVec,
    ) -> Self {
        let mut t = Self::zero(p, q, n0, n1, target, tdim);
        for (c, (xs, as_)) in t.basis_tuples().into_iter().enumerate() {
            let v = f(&xs, &as_);
            debug_assert_eq!(v.len(), tdim);
            if !is_zero_vec(&v) {
                t.coeffs.set_column(c, &v);
            }
        }
        t
    }

    /// Nonzero entries as `(g₀ tuple, g₁ tuple, target index, value)`.
    pub fn entries(&self) -> Vec<(Vec<usize>, Vec<usize>, usize, Rational)> {
        let mut out = Vec::new();
        for (c, (xs, as_)) in self.basis_tuples().into_iter().enumerate() {
            for i in 0..self.target_dim() {
                let v = self.coeffs.get(i, c);
                if !v.is_zero() {
                    out.push((xs.clone(), as_.clone(), i, v.clone()));
                }
            }
        }
        out
    }

    /// Flattened coefficients (column-major over canonical columns).
    pub fn flatten(&self) -> QVec {
        let mut out = Vec::with_capacity(self.ncols() * self.target_dim());
        for c in 0..self.ncols() {
            out.extend(self.coeffs.column(c));
        }
        out
    }

    /// Inverse of [`MultiTensor::flatten`].
    pub fn unflatten(&mut self, v: &[Rational]) {
        let t = self.target_dim();
        assert_eq!(v.len(), t * self.ncols());
        for c in 0..self.ncols() {
            self.coeffs.set_column(c, &v[c * t..(c + 1) * t]);
        }
    }

    pub fn flat_len(&self) -> usize {
        self.ncols() * self.target_dim()
    }
}

/// Adds `a * v` into `out` (helper for assembling sums of tensor values).
pub fn accumulate(out: &mut [Rational], a: &Rational, v: &[Rational]) {
    axpy(out, a, v);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{q, unit_vec};

    #[test]
    fn indexer_counts_and_roundtrip() {
        let s = BasisIndexer::get(4, 2, true);
        assert_eq!(s.len(), 6);
        let w = BasisIndexer::get(3, 2, false);
        assert_eq!(w.len(), 6);
        for i in 0..w.len() {
            assert_eq!(w.index_of(w.tuple(i)), Some(i));
        }
        assert_eq!(BasisIndexer::get(0, 0, true).len(), 1);
        assert_eq!(multiset_count(3, 2), 6);
    }

    #[test]
    fn unshuffle_small() {
        let u = unshuffles(1, 2);
        assert_eq!(u, vec![(vec![0, 1], 1), (vec![1, 0], -1)]);
        assert_eq!(unshuffles(2, 3).len(), 3);
    }

    #[test]
    fn koszul_small() {
        assert_eq!(koszul_sign(&[1, 0], &[0, 0]), 1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]), -1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]) * perm_sign(&[1, 0]), 1);
    }

    #[test]
    fn evaluate_basic() {
        let mut t = MultiTensor::zero(2, 1, 3, 2, Target::V0, 1);
        t.add_basis(&[0, 2], &[1], &[q(5)]);
        let e = |i| unit_vec(3, i);
        let f = |i| unit_vec(2, i);
        let v = t.evaluate(&[&e(0), &e(2)], &[&f(1)]).unwrap();
        assert_eq!(v, vec![q(5)]);
        let w = t.evaluate(&[&e(2), &e(0)], &[&f(1)]).unwrap();
        assert_eq!(w, vec![q(-5)]);
        let z = t.evaluate(&[&e(2), &e(2)], &[&f(1)]).unwrap();
        assert_eq!(z, vec![q(0)]);
        assert!(t.evaluate(&[&e(2)], &[&f(1)]).is_err());
    }
}
