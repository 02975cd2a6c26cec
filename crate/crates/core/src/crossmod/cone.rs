//! The strict Lie 3-algebra on the mapping cone `m₁ → g₁ ⊕ m₀ → g₀`.

use crate::error::Result;
use crate::graded::ThreeTermSpace;
use crate::lie2core::{LInf, Lie3Algebra};
use crate::ratlin::{is_zero_vec, neg_vec, zero_vec, Rational, RationalMatrix};

use super::CrossedModule;

/// Builds the cone; degree 1 lists `g₁` before `m₀`.
pub fn mapping_cone(cm: &CrossedModule) -> Result<Lie3Algebra> {
    let (g, m) = (&cm.g, &cm.m);
    let md = &cm.action.module;
    let (n0, n1) = g.dims();
    let (k0, k1) = m.dims();
    let (d0, d1, d2) = (n0, n1 + k0, k1);

    let diff10 = g.space.diff.hstack(&cm.phi.m0);
    let diff21 = cm.phi.m1.neg().vstack(&m.space.diff);
    let space = ThreeTermSpace::new(d0, d1, d2, diff10, diff21)?;

    let mut l = LInf::new(vec![d0, d1, d2], 3);
    let total = d0 + d1 + d2;
    let x = |i: usize| i;
    let a = |i: usize| d0 + i;
    let al = |i: usize| d0 + n1 + i;
    let xi = |i: usize| d0 + d1 + i;
    let put = |l: &mut LInf, t: &[usize], off: usize, v: &[Rational]| {
        if is_zero_vec(v) {
            return;
        }
        let mut w = zero_vec(total);
        for (i, c) in v.iter().enumerate() {
            w[off + i] = c.clone();
        }
        l.set(t, w);
    };
    let put2 = |l: &mut LInf, t: &[usize], head: (usize, &[Rational]), tail: (usize, &[Rational])| {
        let mut w = zero_vec(total);
        for (off, v) in [head, tail] {
            for (i, c) in v.iter().enumerate() {
                w[off + i] += c;
            }
        }
        if !is_zero_vec(&w) {
            l.set(t, w);
        }
    };

    for i in 0..n0 {
        for j in i + 1..n0 {
            put(&mut l, &[x(i), x(j)], 0, &g.l2_00.eval_basis(&[i, j], &[]));
        }
        for b in 0..n1 {
            put(&mut l, &[x(i), a(b)], a(0), &g.l2_01.eval_basis(&[i], &[b]));
        }
        for c in 0..k0 {
            // ⟪x, α⟫ = −σ(x, α) + x▷α
            let s = neg_vec(&cm.sigma[i].column(c));
            put2(&mut l, &[x(i), al(c)], (a(0), &s), (al(0), &md.act00[i].column(c)));
        }
        for c in 0..k1 {
            put(&mut l, &[x(i), xi(c)], xi(0), &md.act01[i].column(c));
        }
    }
    for b in 0..n1 {
        for c in 0..k0 {
            put(&mut l, &[a(b), al(c)], xi(0), &md.act10[b].column(c));
        }
    }
    for i in 0..n0 {
        for j in i + 1..n0 {
            for k in j + 1..n0 {
                put(&mut l, &[x(i), x(j), x(k)], a(0), &g.l3.eval_basis(&[i, j, k], &[]));
            }
            let r2: RationalMatrix = md.rho2_basis(i, j);
            for c in 0..k0 {
                put(&mut l, &[x(i), x(j), al(c)], xi(0), &neg_vec(&r2.column(c)));
            }
        }
    }
    Lie3Algebra::new(space, l)
}

/// `true` when the cone's `l³` only has the `l₃` part of `g`.
pub fn cone_l3_from_g_only(cm: &CrossedModule) -> bool {
    cm.action.module.act2.iter().all(RationalMatrix::is_zero)
}
