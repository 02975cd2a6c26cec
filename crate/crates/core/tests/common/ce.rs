//! Chevalley–Eilenberg cohomology of an ordinary Lie algebra with coefficients
//! in a representation, written from the textbook formula with its own
//! elimination routine. Shares nothing with the library except `BigRational`.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Structure constants `c[i][j][k]`: `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct LieAlg {
    pub n: usize,
    pub c: Vec<Vec<Vec<Q>>>,
}

impl LieAlg {
    pub fn from_brackets(n: usize, brackets: &[(usize, usize, usize, i64)]) -> Self {
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for &(i, j, k, v) in brackets {
            c[i][j][k] += int(v);
            c[j][i][k] -= int(v);
        }
        LieAlg { n, c }
    }
}

/// `rho[x][row][col]`.
#[derive(Clone, Debug)]
pub struct Rep {
    pub dim: usize,
    pub rho: Vec<Vec<Vec<Q>>>,
}

impl Rep {
    pub fn trivial(g: &LieAlg, dim: usize) -> Self {
        Rep { dim, rho: vec![vec![vec![Q::zero(); dim]; dim]; g.n] }
    }

    pub fn adjoint(g: &LieAlg) -> Self {
        let n = g.n;
        let rho = (0..n)
            .map(|x| (0..n).map(|row| (0..n).map(|col| g.c[x][col][row].clone()).collect()).collect())
            .collect();
        Rep { dim: n, rho }
    }
}

pub fn sl2() -> LieAlg {
    // e, h, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    LieAlg::from_brackets(3, &[(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)])
}

pub fn aff1() -> LieAlg {
    LieAlg::from_brackets(2, &[(0, 1, 1, 1)])
}

pub fn heis() -> LieAlg {
    LieAlg::from_brackets(3, &[(0, 1, 2, 1)])
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sign of sorting `v` (distinct entries), or `None` on a repeat.
fn sort_sign(v: &mut [usize]) -> Option<i64> {
    let mut s = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                s = -s;
            }
        }
    }
    Some(s)
}

/// Matrix of `d : C^k → C^{k+1}`, rows indexed by `(T, w)`, columns by `(S, v)`.
pub fn differential(g: &LieAlg, rep: &Rep, k: usize) -> Vec<Vec<Q>> {
    let src = subsets(g.n, k);
    let tgt = subsets(g.n, k + 1);
    let dim = rep.dim;
    let mut d = vec![vec![Q::zero(); src.len() * dim]; tgt.len() * dim];
    let index = |s: &[usize]| src.iter().position(|x| x == s);
    for (ti, t) in tgt.iter().enumerate() {
        // Σ_i (-1)^i x_{t_i}·ω(t without t_i)
        for i in 0..t.len() {
            let mut rest = t.clone();
            let x = rest.remove(i);
            let si = index(&rest).expect("subset");
            let sign = if i % 2 == 0 { int(1) } else { int(-1) };
            for w in 0..dim {
                for v in 0..dim {
                    let r = &rep.rho[x][w][v];
                    if !r.is_zero() {
                        d[ti * dim + w][si * dim + v] += &sign * r;
                    }
                }
            }
        }
        // Σ_{i<j} (-1)^{i+j} ω([x_{t_i}, x_{t_j}], rest)
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let rest: Vec<usize> = t.iter().enumerate().filter(|(p, _)| *p != i && *p != j).map(|(_, &x)| x).collect();
                let base = if (i + j) % 2 == 0 { int(1) } else { int(-1) };
                for m in 0..g.n {
                    let cm = &g.c[t[i]][t[j]][m];
                    if cm.is_zero() {
                        continue;
                    }
                    let mut args = vec![m];
                    args.extend_from_slice(&rest);
                    let Some(s) = sort_sign(&mut args) else { continue };
                    let si = index(&args).expect("subset");
                    let coef = &base * cm * int(s);
                    for v in 0..dim {
                        d[ti * dim + v][si * dim + v] += &coef;
                    }
                }
            }
        }
    }
    d
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn cochain_dim(g: &LieAlg, rep: &Rep, k: usize) -> usize {
    subsets(g.n, k).len() * rep.dim
}

/// `dim H^k(g, V)`.
pub fn betti(g: &LieAlg, rep: &Rep, k: usize) -> usize {
    let dk = rank(&differential(g, rep, k));
    let dk1 = if k == 0 { 0 } else { rank(&differential(g, rep, k - 1)) };
    cochain_dim(g, rep, k) - dk - dk1
}

/// `d_{k+1} ∘ d_k` is zero (sanity of the oracle itself).
pub fn squares_to_zero(g: &LieAlg, rep: &Rep, k: usize) -> bool {
    let a = differential(g, rep, k);
    let b = differential(g, rep, k + 1);
    b.iter().all(|row| {
        (0..a.first().map_or(0, |r| r.len())).all(|j| {
            let mut s = Q::zero();
            for (l, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    s += x * &a[l][j];
                }
            }
            s.is_zero()
        })
    })
}
