//! Finite-dimensional graded brackets `l_k` and the homotopy Jacobi identities.
//!
//! Basis vectors are numbered globally, degree 0 first. A bracket is stored on
//! canonically sorted tuples (nondecreasing global index, repeats only for odd
//! degree) and extended by graded antisymmetry: swapping neighbours of degrees
//! `a`, `b` costs `−(−1)^{ab}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::graded::{koszul_sign, unshuffles};
use crate::ratlin::{axpy, is_zero_vec, q, zero_vec, QVec, Rational};
use crate::report::{Tally, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInf {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
    /// `brackets[k]` holds `l_k` on canonical tuples (only nonzero values).
    brackets: Vec<BTreeMap<Vec<usize>, QVec>>,
}

impl LInf {
    pub fn new(dims: Vec<usize>, max_arity: usize) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for d in &dims {
            offsets.push(acc);
            acc += d;
        }
        Self { dims, offsets, total: acc, brackets: vec![BTreeMap::new(); max_arity + 1] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn max_arity(&self) -> usize {
        self.brackets.len() - 1
    }

    pub fn offset(&self, degree: usize) -> usize {
        self.offsets[degree]
    }

    pub fn global(&self, degree: usize, i: usize) -> usize {
        self.offsets[degree] + i
    }

    pub fn degree_of(&self, g: usize) -> usize {
        (0..self.dims.len()).rev().find(|&d| g >= self.offsets[d]).expect("index in range")
    }

    /// Human-readable name of a global basis index.
    pub fn label(&self, g: usize) -> String {
        let d = self.degree_of(g);
        let i = g - self.offsets[d];
        let stem = ["x", "a", "w", "v"].get(d).copied().unwrap_or("e");
        format!("{stem}{i}")
    }

    pub fn label_tuple(&self, t: &[usize]) -> String {
        let parts: Vec<String> = t.iter().map(|&g| self.label(g)).collect();
        format!("({})", parts.join(", "))
    }

    /// Sorts into canonical order; returns the sign or `None` if the value vanishes.
    pub fn canonicalize(&self, t: &mut [usize]) -> Option<i32> {
        let mut s = 1;
        for i in 1..t.len() {
            let mut j = i;
            while j > 0 && t[j - 1] > t[j] {
                let (a, b) = (self.degree_of(t[j - 1]), self.degree_of(t[j]));
                if (a * b) % 2 == 0 {
                    s = -s;
                }
                t.swap(j - 1, j);
                j -= 1;
            }
        }
        for w in t.windows(2) {
            if w[0] == w[1] && self.degree_of(w[0]) % 2 == 0 {
                return None;
            }
        }
        Some(s)
    }

    /// Sets `l_k` on a tuple (any order) to `v`, respecting the sign of sorting.
    pub fn set(&mut self, tuple: &[usize], v: QVec) {
        assert_eq!(v.len(), self.total);
        let mut t = tuple.to_vec();
        let Some(s) = self.canonicalize(&mut t) else {
            assert!(is_zero_vec(&v), "nonzero value on a vanishing tuple");
            return;
        };
        let v = if s < 0 { v.into_iter().map(|x| -x).collect() } else { v };
        let k = t.len();
        if is_zero_vec(&v) {
            self.brackets[k].remove(&t);
        } else {
            self.brackets[k].insert(t, v);
        }
    }

    /// Adds `delta` to the `out` coordinate of `l_k` on a tuple.
    pub fn perturb(&mut self, tuple: &[usize], out: usize, delta: &Rational) {
        let mut v = self.basis_value(tuple);
        v[out] += delta;
        self.set(tuple, v);
    }

    /// Stored canonical entries of `l_k`.
    pub fn entries(&self, k: usize) -> &BTreeMap<Vec<usize>, QVec> {
        &self.brackets[k]
    }

    /// `l_k` on basis vectors, any order.
    pub fn basis_value(&self, tuple: &[usize]) -> QVec {
        let k = tuple.len();
        if k >= self.brackets.len() {
            return zero_vec(self.total);
        }
        let mut t = tuple.to_vec();
        let Some(s) = self.canonicalize(&mut t) else {
            return zero_vec(self.total);
        };
        match self.brackets[k].get(&t) {
            None => zero_vec(self.total),
            Some(v) if s > 0 => v.clone(),
            Some(v) => v.iter().map(|x| -x).collect(),
        }
    }

    /// `l_k(w, e_{rest…})` where `w` is an arbitrary vector.
    pub fn value_with_vector_first(&self, w: &[Rational], rest: &[usize]) -> QVec {
        let mut out = zero_vec(self.total);
        let mut t = Vec::with_capacity(rest.len() + 1);
        for (i, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            t.clear();
            t.push(i);
            t.extend_from_slice(rest);
            let v = self.basis_value(&t);
            axpy(&mut out, c, &v);
        }
        out
    }

    /// Multilinear `l_k` on arbitrary vectors.
    pub fn value(&self, args: &[&[Rational]]) -> QVec {
        let mut out = zero_vec(self.total);
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|v| (0..v.len()).filter(|&i| !v[i].is_zero()).collect())
            .collect();
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let mut idx = vec![0usize; args.len()];
        let mut t = vec![0usize; args.len()];
        loop {
            let mut c = q(1);
            for (k, &j) in idx.iter().enumerate() {
                t[k] = supports[k][j];
                c *= &args[k][t[k]];
            }
            axpy(&mut out, &c, &self.basis_value(&t));
            let mut k = args.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < supports[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Canonical basis tuples of length `n`.
    pub fn canonical_tuples(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.tuples_rec(n, 0, &mut cur, &mut out);
        out
    }

    fn tuples_rec(&self, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for g in start..self.total {
            let next = if self.degree_of(g) % 2 == 1 { g } else { g + 1 };
            cur.push(g);
            self.tuples_rec(n, next, cur, out);
            cur.pop();
        }
    }

    /// Left side of the `n`-th homotopy Jacobi identity on basis vectors:
    /// `Σ_{i+j=n+1} (−1)^{i(j−1)} Σ_σ χ(σ) l_j(l_i(x_σ…), x_σ…)`.
    pub fn identity_residual(&self, tuple: &[usize]) -> QVec {
        let n = tuple.len();
        let degs: Vec<usize> = tuple.iter().map(|&g| self.degree_of(g)).collect();
        let mut out = zero_vec(self.total);
        for i in 1..=n {
            let j = n + 1 - i;
            if i > self.max_arity() || j > self.max_arity() {
                continue;
            }
            if self.brackets[i].is_empty() || self.brackets[j].is_empty() {
                continue;
            }
            let outer_sign = if (i * (j - 1)) % 2 == 0 { 1 } else { -1 };
            for (perm, s) in unshuffles(i, n) {
                let chi = s * koszul_sign(&perm, &degs);
                let inner_args: Vec<usize> = perm[..i].iter().map(|&k| tuple[k]).collect();
                let inner = self.basis_value(&inner_args);
                if is_zero_vec(&inner) {
                    continue;
                }
                let rest: Vec<usize> = perm[i..].iter().map(|&k| tuple[k]).collect();
                let v = self.value_with_vector_first(&inner, &rest);
                axpy(&mut out, &q((outer_sign * chi) as i64), &v);
            }
        }
        out
    }

    /// Checks the identities for `n = 1..=max_n` on all canonical tuples whose
    /// identity lands in an existing degree. One named check per `n`.
    pub fn check_identities(&self, max_n: usize, verdict: &mut Verdict) {
        let top = self.top_degree();
        for n in 1..=max_n {
            let mut tally = Tally::new();
            let mut skipped = 0usize;
            for t in self.canonical_tuples(n) {
                let deg_sum: usize = t.iter().map(|&g| self.degree_of(g)).sum();
                let target = deg_sum as i64 + n as i64 - 3;
                if target < 0 || target > top as i64 {
                    skipped += 1;
                    continue;
                }
                let r = self.identity_residual(&t);
                tally.case(is_zero_vec(&r), || {
                    format!("n={n}, tuple {}", self.label_tuple(&t))
                });
            }
            if skipped > 0 {
                log::debug!("identity n={n}: skipped {skipped} tuples landing outside degrees 0..={top}");
            }
            tally.into_verdict(verdict, format!("homotopy Jacobi identity n={n}"));
        }
    }
}
