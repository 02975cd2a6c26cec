//! The connecting map `∂ : H^n(h, Q) → H^{n+1}(h, V)` of a short exact sequence of modules.

use crate::error::{Error, Result};
use crate::graded::GradedMap;
use crate::ratlin::{rank, section_on_image, QVec, RationalMatrix};
use crate::repcoh::{apply_coboundary, class_coordinates, cohomology, Cochain};
use crate::report::Verdict;

use super::extension::ModuleSequence;
use super::push_forward;

pub const CONNECTING_CHECKS: [&str; 3] =
    ["∂ is independent of the section of q", "∂∘q_* = 0", "exactness of H^n(h,I) → H^n(h,Q) → H^{n+1}(h,V)"];

/// The matrix of `∂` in the cohomology bases of `repcoh`, with its checks.
#[derive(Clone, Debug)]
pub struct ConnectingMap {
    pub degree: i64,
    /// `dim H^{n+1}(h, V) × dim H^n(h, Q)`.
    pub matrix: RationalMatrix,
    /// The map `H^n(h, I) → H^n(h, Q)`.
    pub q_star: RationalMatrix,
    pub verdict: Verdict,
}

fn graded(f: impl Fn(&RationalMatrix) -> RationalMatrix, m: &GradedMap) -> GradedMap {
    GradedMap::new(f(&m.m0), f(&m.m1))
}

/// `p⁻¹ D^I (σ ∘ c)` for a cocycle `c ∈ C^n(h, Q)` and a section `σ` of `q`.
fn boundary_with(seq: &ModuleSequence, c: &Cochain, sigma: &GradedMap) -> Result<Cochain> {
    let lift = push_forward(c, sigma, &seq.mid)?;
    let d = apply_coboundary(&seq.mid, &lift);
    let p_inv = graded(section_on_image, &seq.p);
    let back = push_forward(&d, &p_inv, &seq.sub)?;
    let again = push_forward(&back, &seq.p, &seq.mid)?;
    if again != d {
        return Err(Error::refused("D(σ∘c) takes values in Img p", d.sub(&again).first_nonzero().unwrap_or_default()));
    }
    Ok(back)
}

/// The cocycle representing `∂[c]`, built with the section `section_on_image(q)`.
pub fn connecting_cochain(seq: &ModuleSequence, c: &Cochain) -> Result<Cochain> {
    seq.require_exact()?;
    boundary_with(seq, c, &graded(section_on_image, &seq.q))
}

fn matrix_for(seq: &ModuleSequence, reps: &[Cochain], sigma: &GradedMap, rows: usize) -> Result<RationalMatrix> {
    let cols: Vec<QVec> = reps
        .iter()
        .map(|c| class_coordinates(&seq.sub, &boundary_with(seq, c, sigma)?))
        .collect::<Result<_>>()?;
    Ok(RationalMatrix::from_columns(&cols, rows))
}

/// A second section `σ + p∘K`, with `K` the all-ones map.
fn shifted(seq: &ModuleSequence, sigma: &GradedMap) -> GradedMap {
    let ones = |r: usize, c: usize| {
        let mut k = RationalMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                k.set(i, j, crate::ratlin::q(1));
            }
        }
        k
    };
    let k = GradedMap::new(ones(seq.sub.v0(), seq.quot.v0()), ones(seq.sub.v1(), seq.quot.v1()));
    sigma.add(&seq.p.compose(&k))
}

/// `∂` in degree `n`, computed with two sections of `q` and checked against
/// the long exact sequence at `H^n(h, Q)`.
pub fn connecting_map(seq: &ModuleSequence, n: i64) -> Result<ConnectingMap> {
    seq.require_exact()?;
    let hq = cohomology(&seq.quot, n)?;
    let hv = cohomology(&seq.sub, n + 1)?;
    let hi = cohomology(&seq.mid, n)?;
    let sigma = graded(section_on_image, &seq.q);
    let matrix = matrix_for(seq, &hq.representatives, &sigma, hv.betti)?;
    let other = matrix_for(seq, &hq.representatives, &shifted(seq, &sigma), hv.betti)?;
    let q_cols: Vec<QVec> = hi
        .representatives
        .iter()
        .map(|c| class_coordinates(&seq.quot, &push_forward(c, &seq.q, &seq.quot)?))
        .collect::<Result<_>>()?;
    let q_star = RationalMatrix::from_columns(&q_cols, hq.betti);
    let mut verdict = Verdict::new();
    verdict.expect(CONNECTING_CHECKS[0], matrix == other, || "second section".into());
    let comp = matrix.mul(&q_star);
    verdict.expect(CONNECTING_CHECKS[1], comp.is_zero(), || format!("{comp:?}"));
    let (rq, rd) = (rank(&q_star), rank(&matrix));
    verdict.expect(CONNECTING_CHECKS[2], rq + rd == hq.betti, || {
        format!("rank q_* = {rq}, rank ∂ = {rd}, dim H^{n}(h,Q) = {}", hq.betti)
    });
    Ok(ConnectingMap { degree: n, matrix, q_star, verdict })
}
