//! The coboundary `D = d̂ + ∂̂ + d^{(1,0)} + d^{(0,1)} + d_{φ₂} + d_{l₃}`.

use num_traits::Zero;

use crate::error::Result;
use crate::graded::{unshuffles, MultiTensor};
use crate::ratlin::{axpy, q, unit_vec, zero_vec, QVec, Rational, RationalMatrix};

use super::cochain::{cochain_space, empty_tensor, Block, Cochain};
use super::cohomology::check_ceiling;
use super::Lie2Module;

/// The six pieces of `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// `d̂`: feeds `d a` into the last `g₀` slot.
    DHat,
    /// `∂̂ = (−1)^p ∂∘f`.
    PartialHat,
    /// `d^{(1,0)}`: the `g₀` action and brackets.
    Phi10,
    /// `d^{(0,1)}`: `a ▷` from `V₀` to `V₁`.
    Phi01,
    /// `d_{φ₂}`: `(x, y) ▷`.
    Phi2,
    /// `d_{l₃}`: feeds `l₃` into a `g₁` slot.
    L3,
}

impl Component {
    pub const ALL: [Component; 6] = [
        Component::DHat,
        Component::PartialHat,
        Component::Phi10,
        Component::Phi01,
        Component::Phi2,
        Component::L3,
    ];

    /// Target block, or `None` if the component vanishes on this block.
    pub fn target(self, b: Block) -> Option<Block> {
        let Block { p, q, s } = b;
        match self {
            Component::DHat if p >= 1 => Some(Block::new(p - 1, q + 1, s)),
            Component::PartialHat if s == 1 => Some(Block::new(p, q, 0)),
            Component::Phi10 => Some(Block::new(p + 1, q, s)),
            Component::Phi01 if s == 0 => Some(Block::new(p, q + 1, 1)),
            Component::Phi2 if s == 0 => Some(Block::new(p + 2, q, 1)),
            Component::L3 if q >= 1 => Some(Block::new(p + 3, q - 1, s)),
            _ => None,
        }
    }
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// `f(xs with v inserted at position pos, as_)`.
fn eval_x_slot(f: &MultiTensor, xs: &[usize], pos: usize, v: &[Rational], as_: &[usize]) -> QVec {
    let mut out = zero_vec(f.target_dim());
    let mut t = Vec::with_capacity(xs.len() + 1);
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        t.clear();
        t.extend_from_slice(&xs[..pos]);
        t.push(j);
        t.extend_from_slice(&xs[pos..]);
        axpy(&mut out, c, &f.eval_basis(&t, as_));
    }
    out
}

/// `f(xs, as_ with v appended)`.
fn eval_a_slot(f: &MultiTensor, xs: &[usize], as_: &[usize], v: &[Rational]) -> QVec {
    let mut out = zero_vec(f.target_dim());
    let mut t = Vec::with_capacity(as_.len() + 1);
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        t.clear();
        t.extend_from_slice(as_);
        t.push(j);
        axpy(&mut out, c, &f.eval_basis(xs, &t));
    }
    out
}

fn without(v: &[usize], i: usize) -> Vec<usize> {
    v.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect()
}

/// One component applied to a tensor in block `b`.
pub fn apply_component(m: &Lie2Module, comp: Component, b: Block, f: &MultiTensor) -> Option<(Block, MultiTensor)> {
    let tb = comp.target(b)?;
    let g = &m.algebra;
    let (n0, n1) = g.dims();
    let tdim = if tb.s == 0 { m.v0() } else { m.v1() };
    if f.is_zero() {
        return Some((tb, empty_tensor(m, tb)));
    }
    let Block { p, .. } = b;
    let out = MultiTensor::from_fn(tb.p, tb.q, n0, n1, tb.target(), tdim, |xs, as_| {
        let mut acc = zero_vec(tdim);
        match comp {
            Component::DHat => {
                let sg = sign(p);
                for k in 0..as_.len() {
                    let da = g.space.diff.column(as_[k]);
                    let rest = without(as_, k);
                    axpy(&mut acc, &sg, &eval_x_slot(f, xs, xs.len(), &da, &rest));
                }
            }
            Component::PartialHat => {
                let v = m.space.diff.mul_vec(&f.eval_basis(xs, as_));
                axpy(&mut acc, &sign(p), &v);
            }
            Component::Phi10 => {
                let np = xs.len();
                for i in 0..np {
                    let rest = without(xs, i);
                    let val = f.eval_basis(&rest, as_);
                    let act = if b.s == 0 { &m.act00[xs[i]] } else { &m.act01[xs[i]] };
                    // (−1)^{i+1} with i 1-based
                    axpy(&mut acc, &sign(i), &act.mul_vec(&val));
                }
                for i in 0..np {
                    for j in i + 1..np {
                        let br = g.l2_00.eval_basis(&[xs[i], xs[j]], &[]);
                        let rest: Vec<usize> = xs
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != i && k != j)
                            .map(|(_, &x)| x)
                            .collect();
                        // (−1)^{i+j} with 1-based indices
                        axpy(&mut acc, &sign(i + j), &eval_x_slot(f, &rest, 0, &br, as_));
                    }
                }
                for i in 0..np {
                    let rest = without(xs, i);
                    for j in 0..as_.len() {
                        let br = g.l2_01.eval_basis(&[xs[i]], &[as_[j]]);
                        let others = without(as_, j);
                        axpy(&mut acc, &sign(i + 1), &eval_a_slot(f, &rest, &others, &br));
                    }
                }
            }
            Component::Phi01 => {
                let sg = sign(p);
                for i in 0..as_.len() {
                    let val = f.eval_basis(xs, &without(as_, i));
                    axpy(&mut acc, &sg, &m.act10[as_[i]].mul_vec(&val));
                }
            }
            Component::Phi2 => {
                let sg = sign(p);
                for (perm, s) in unshuffles(2, xs.len()) {
                    let rest: Vec<usize> = perm[2..].iter().map(|&k| xs[k]).collect();
                    let val = f.eval_basis(&rest, as_);
                    let mat = m.rho2_basis(xs[perm[0]], xs[perm[1]]);
                    axpy(&mut acc, &(&sg * q(s as i64)), &mat.mul_vec(&val));
                }
            }
            Component::L3 => {
                for (perm, s) in unshuffles(3, xs.len()) {
                    let l3 = g.l3.eval_basis(&[xs[perm[0]], xs[perm[1]], xs[perm[2]]], &[]);
                    let rest: Vec<usize> = perm[3..].iter().map(|&k| xs[k]).collect();
                    axpy(&mut acc, &q(-(s as i64)), &eval_a_slot(f, &rest, as_, &l3));
                }
            }
        }
        acc
    });
    Some((tb, out))
}

/// `D c` for a cochain of any degree.
pub fn apply_coboundary(m: &Lie2Module, c: &Cochain) -> Cochain {
    let mut out = Cochain::zero(m, c.degree + 1);
    for (b, f) in c.blocks.iter().zip(&c.parts) {
        if f.is_zero() {
            continue;
        }
        for comp in Component::ALL {
            if let Some((tb, t)) = apply_component(m, comp, *b, f) {
                let slot = out.block_mut(tb).expect("component lands in degree n+1");
                *slot = slot.add(&t);
            }
        }
    }
    out
}

/// Matrix of `D : C^n → C^{n+1}` in the flattened layouts.
pub fn coboundary(m: &Lie2Module, n: i64) -> Result<RationalMatrix> {
    check_ceiling(n)?;
    Ok(coboundary_unchecked(m, n))
}

pub(crate) fn coboundary_unchecked(m: &Lie2Module, n: i64) -> RationalMatrix {
    let src = cochain_space(m, n);
    let tgt = cochain_space(m, n + 1);
    let mut mat = RationalMatrix::zeros(tgt.total, src.total);
    for (bi, &b) in src.blocks.iter().enumerate() {
        let len = src.dims[bi];
        let mut f = empty_tensor(m, b);
        for k in 0..len {
            f.unflatten(&unit_vec(len, k));
            for comp in Component::ALL {
                let Some((tb, t)) = apply_component(m, comp, b, &f) else { continue };
                let ti = tgt.position(tb).expect("component lands in degree n+1");
                let off = tgt.offsets[ti];
                for (r, v) in t.flatten().iter().enumerate() {
                    if !v.is_zero() {
                        mat.add_at(off + r, src.offsets[bi] + k, v);
                    }
                }
            }
        }
    }
    mat
}
