//! Betti numbers, representatives, and class coordinates.

use crate::error::{Error, Result};
use crate::ratlin::{image_basis, kernel_basis, quotient_basis, solve, QVec, Rational, RationalMatrix};

use super::coboundary::coboundary_unchecked;
use super::cochain::{cochain_space, Cochain};
use super::Lie2Module;

/// Environment variable overriding the highest degree `n` for which `D_n` is built.
pub const CEILING_VAR: &str = "LIE2KIT_DEGREE_CEILING";
pub const DEFAULT_CEILING: i64 = 4;

pub fn degree_ceiling() -> i64 {
    std::env::var(CEILING_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CEILING)
}

pub(crate) fn check_ceiling(n: i64) -> Result<()> {
    let c = degree_ceiling();
    if n > c {
        return Err(Error::DegreeCeiling { degree: n, ceiling: c });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i64,
    pub betti: usize,
    /// Cocycles whose classes form a basis of `H^n`.
    pub representatives: Vec<Cochain>,
    /// `dim ker D_n`.
    pub cocycles: usize,
    /// `rank D_{n−1}`.
    pub coboundaries: usize,
    pub cochain_dim: usize,
}

fn d_matrix(m: &Lie2Module, n: i64) -> RationalMatrix {
    if n < -1 {
        let t = cochain_space(m, n + 1).total;
        return RationalMatrix::zeros(t, 0);
    }
    coboundary_unchecked(m, n)
}

struct Split {
    reps: Vec<QVec>,
    image: Vec<QVec>,
    kernel: usize,
}

fn split(m: &Lie2Module, n: i64) -> Result<Split> {
    check_ceiling(n)?;
    let dim = cochain_space(m, n).total;
    let kernel = kernel_basis(&d_matrix(m, n));
    let image = image_basis(&d_matrix(m, n - 1));
    // complete the image to the kernel inside kernel coordinates
    let kmat = RationalMatrix::from_columns(&kernel, dim);
    let coords: Vec<QVec> = image
        .iter()
        .map(|v| solve(&kmat, v).expect("D² = 0 puts the image inside the kernel"))
        .collect();
    let comp = quotient_basis(&coords, kernel.len())?;
    let reps = comp.basis.iter().map(|c| kmat.mul_vec(c)).collect();
    Ok(Split { reps, image, kernel: kernel.len() })
}

/// `H^n(g, V)` with representatives completing `im D_{n−1}` inside `ker D_n`.
pub fn cohomology(m: &Lie2Module, n: i64) -> Result<Cohomology> {
    let s = split(m, n)?;
    let representatives = s
        .reps
        .iter()
        .map(|v| Cochain::from_flat(m, n, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cohomology {
        degree: n,
        betti: s.reps.len(),
        representatives,
        cocycles: s.kernel,
        coboundaries: s.image.len(),
        cochain_dim: cochain_space(m, n).total,
    })
}

/// Coordinates of the class of a cocycle in the basis of [`cohomology`].
pub fn class_coordinates(m: &Lie2Module, cocycle: &Cochain) -> Result<QVec> {
    let n = cocycle.degree;
    let s = split(m, n)?;
    let dim = cochain_space(m, n).total;
    let mut cols = s.reps.clone();
    cols.extend(s.image.iter().cloned());
    let mat = RationalMatrix::from_columns(&cols, dim);
    let v = cocycle.flatten();
    let sol = solve(&mat, &v).map_err(|_| Error::refused("cocycle condition", "argument is not a cocycle"))?;
    Ok(sol[..s.reps.len()].to_vec())
}

/// Whether `a − b` is a coboundary.
pub fn cohomologous(m: &Lie2Module, a: &Cochain, b: &Cochain) -> Result<bool> {
    let n = a.degree;
    check_ceiling(n)?;
    let diff: Vec<Rational> = a.sub(b).flatten();
    let d = d_matrix(m, n - 1);
    Ok(solve(&d, &diff).is_ok())
}
