//! Exact rational linear algebra.
//!
//! Everything here works over [`Rational`] (an arbitrary-precision fraction),
//! so every equality test downstream is bit-exact. Elimination is done
//! fraction-free on integer rows, and every basis that comes back is in reduced
//! echelon form, which makes results reproducible between runs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact rational number. `num_rational` keeps it normalized
/// (gcd 1, positive denominator, zero as `0/1`).
pub type Rational = BigRational;

/// A column vector of rationals.
pub type QVec = Vec<Rational>;

/// Shorthand for the rational `n/1`.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"`, and accepts the unicode minus sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Formats as `"p/q"` or `"p"` with an ASCII minus.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats as `(a, b, …)`.
pub fn format_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn zero_vec(n: usize) -> QVec {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> QVec {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn add_vec(x: &[Rational], y: &[Rational]) -> QVec {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vec(x: &[Rational], y: &[Rational]) -> QVec {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale_vec(a: &Rational, x: &[Rational]) -> QVec {
    x.iter().map(|v| a * v).collect()
}

pub fn neg_vec(x: &[Rational]) -> QVec {
    x.iter().map(|v| -v).collect()
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from integer rows; convenient in tests and fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, q(*v));
            }
        }
        m
    }

    /// Rows given as vectors of equal length; `cols` is used when `rows` is empty.
    pub fn from_rows(rows: &[QVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Columns given as vectors of equal length; `rows` is used when `cols` is empty.
    pub fn from_columns(cols: &[QVec], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> QVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Rational]) {
        assert_eq!(v.len(), self.rows);
        for (i, x) in v.iter().enumerate() {
            self.set(i, j, x.clone());
        }
    }

    pub fn columns(&self) -> Vec<QVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> QVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = zero_vec(self.rows);
        for (k, vk) in v.iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, k);
                if !a.is_zero() {
                    *o += a * vk;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, a: &Rational) -> Self {
        let data = self.data.iter().map(|x| a * x).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Sub-matrix of the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (ech, pivots) = bareiss_echelon(self);
        let r = pivots.len();
        let mut m = Self::zeros(r, self.cols);
        for i in 0..r {
            let p = Rational::from_integer(ech[i][pivots[i]].clone());
            for j in 0..self.cols {
                if !ech[i][j].is_zero() {
                    m.set(i, j, Rational::from_integer(ech[i][j].clone()) / &p);
                }
            }
        }
        // back substitution, bottom-up
        for i in (0..r).rev() {
            let pc = pivots[i];
            for k in 0..i {
                let f = m.get(k, pc).clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..self.cols {
                    let v = m.get(i, j).clone();
                    if !v.is_zero() {
                        let cur = m.get(k, j) - &f * &v;
                        m.set(k, j, cur);
                    }
                }
            }
        }
        (m, pivots)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let aug = self.hstack(&Self::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.select(&rows, &idx))
    }
}

/// Scales each row to integers and runs fraction-free elimination.
/// Returns the nonzero echelon rows and the pivot columns.
fn bareiss_echelon(m: &RationalMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            let f = a[i][c].clone();
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &f * &a[r][j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division not exact");
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Row rank.
pub fn rank(m: &RationalMatrix) -> usize {
    bareiss_echelon(m).1.len()
}

/// Basis of `{v : M v = 0}` in reduced echelon normal form.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<QVec> {
    let (r, pivots) = m.rref();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = unit_vec(n, f);
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, f).clone();
        }
        out.push(v);
    }
    // free-variable vectors come out with leading entries at pivot rows;
    // normalize to reduced echelon form of the kernel as a row space
    echelon_basis(&out, n)
}

/// Basis of the column space of `M` in reduced echelon form.
pub fn image_basis(m: &RationalMatrix) -> Vec<QVec> {
    let (r, pivots) = m.transpose().rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Reduced echelon basis of the span of `vs` in an ambient space of dimension `n`.
pub fn echelon_basis(vs: &[QVec], n: usize) -> Vec<QVec> {
    if vs.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = RationalMatrix::from_rows(vs, n).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Some `v` with `M v = b`.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<QVec> {
    if b.len() != m.rows() {
        return Err(Error::Shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let bcol = RationalMatrix::from_columns(&[b.to_vec()], m.rows());
    let (r, pivots) = m.hstack(&bcol).rref();
    if pivots.last() == Some(&m.cols()) {
        return Err(Error::NoSolution);
    }
    let mut v = zero_vec(m.cols());
    for (i, &p) in pivots.iter().enumerate() {
        v[p] = r.get(i, m.cols()).clone();
    }
    Ok(v)
}

/// A complement of a subspace together with the projection onto it.
#[derive(Clone, Debug)]
pub struct Complement {
    /// Standard basis vectors completing the subspace to the ambient space.
    pub basis: Vec<QVec>,
    /// `dim complement × ambient`; kills the subspace, identity on `basis`.
    pub projection: RationalMatrix,
}

/// Completes the independent vectors `sub` to a basis of the ambient space.
pub fn quotient_basis(sub: &[QVec], ambient: usize) -> Result<Complement> {
    if let Some(v) = sub.iter().find(|v| v.len() != ambient) {
        return Err(Error::Shape(format!(
            "vector of length {} in an ambient space of dimension {ambient}",
            v.len()
        )));
    }
    let s = RationalMatrix::from_rows(sub, ambient);
    let (_, pivots) = s.rref();
    if pivots.len() != sub.len() {
        return Err(Error::DependentInput);
    }
    let free: Vec<usize> = (0..ambient).filter(|j| !pivots.contains(j)).collect();
    let basis: Vec<QVec> = free.iter().map(|&j| unit_vec(ambient, j)).collect();
    let mut all = sub.to_vec();
    all.extend(basis.iter().cloned());
    let inv = RationalMatrix::from_columns(&all, ambient).inverse()?;
    let rows: Vec<usize> = (sub.len()..ambient).collect();
    let cols: Vec<usize> = (0..ambient).collect();
    Ok(Complement { basis, projection: inv.select(&rows, &cols) })
}

/// A matrix `Q` with `M Q M = M`: the right inverse on the image of `M`,
/// extended by zero on a complement of that image.
pub fn section_on_image(m: &RationalMatrix) -> RationalMatrix {
    let (_, pivots) = m.rref();
    let r = pivots.len();
    let mut out = RationalMatrix::zeros(m.cols(), m.rows());
    if r == 0 {
        return out;
    }
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let b = m.select(&all_rows, &pivots);
    // r independent rows of B give an invertible r×r block
    let (_, row_piv) = b.transpose().rref();
    let rcols: Vec<usize> = (0..r).collect();
    let block = b.select(&row_piv, &rcols);
    let inv = block.inverse().expect("independent rows of independent columns");
    for (a, &pc) in pivots.iter().enumerate() {
        for (k, &ri) in row_piv.iter().enumerate() {
            out.set(pc, ri, inv.get(a, k).clone());
        }
    }
    out
}

/// A subspace of `Q^n`, stored as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<QVec>,
}

impl Subspace {
    pub fn span(ambient: usize, vs: &[QVec]) -> Self {
        Self { ambient, basis: echelon_basis(vs, ambient) }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let vs: Vec<QVec> = (0..ambient).map(|i| unit_vec(ambient, i)).collect();
        Self { ambient, basis: vs }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        rank(&RationalMatrix::from_rows(&vs, self.ambient)) == self.dim()
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<QVec> {
        let m = RationalMatrix::from_columns(&self.basis, self.ambient);
        solve(&m, v).ok()
    }

    /// Matrix whose columns are the basis vectors (`ambient × dim`).
    pub fn inclusion(&self) -> RationalMatrix {
        RationalMatrix::from_columns(&self.basis, self.ambient)
    }
}
