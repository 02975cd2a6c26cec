//! The λ-condition, the strong crossed modules `ε_λ = (k ⊕_λ V, g)`, and
//! gauge transformations between them.

use crate::crossmod::{check_crossed_module, refuse_first, zero_sigma, CrossedModule, CrossedModuleMorphism, DerivAction};
use crate::error::{Error, Result};
use crate::graded::{BasisIndexer, GradedMap, MultiTensor, Target, TwoTermSpace};
use crate::lie2core::{quotient, GradedSubspace, Lie2Algebra, Lie2Hom, Quotient};
use crate::ratlin::{is_zero_vec, neg_vec, zero_vec, QVec, Rational, RationalMatrix};
use crate::repcoh::{apply_coboundary, Cochain, Lie2Module};
use crate::report::{Tally, Verdict};

use super::extension::{abelian_extension, degree_one_parts, AbelianExtension};
use super::{descend_module, pull_back};

/// An `h`-module `V` and a 2-cochain `λ ∈ C²(h, V)`.
#[derive(Clone, Debug)]
pub struct ExtensionDatum {
    pub module: Lie2Module,
    pub lambda: Cochain,
}

impl ExtensionDatum {
    pub fn extension(&self) -> Result<AbelianExtension> {
        abelian_extension(&self.module, &self.lambda)
    }
}

pub const LAMBDA_CONDITION: [&str; 3] = ["i_e(D^g λ) = 0 for e ∈ k", "D^g λ = π*θ", "D^h θ = 0"];

/// Outcome of [`check_lambda_condition`].
#[derive(Clone, Debug)]
pub struct LambdaCheck {
    pub verdict: Verdict,
    pub quotient: Quotient,
    /// `V` as an `h = g/k`-module.
    pub h_module: Lie2Module,
    /// `θ = s*(D^g λ)` when the condition holds.
    pub theta: Option<Cochain>,
}

fn require_pulled_back(v: &Lie2Module, k: &GradedSubspace) -> Result<()> {
    let g = &v.algebra;
    let what = "V is pulled back from g/k";
    for (i, e) in k.s0.basis().iter().enumerate() {
        if !v.rho00(e).is_zero() || !v.rho01(e).is_zero() {
            return Err(Error::refused(what, format!("k₀[{i}]▷")));
        }
        for y in 0..g.n0() {
            if !v.rho2(e, &g.e0(y)).is_zero() {
                return Err(Error::refused(what, format!("(k₀[{i}], x{y})▷")));
            }
        }
    }
    for (i, e) in k.s1.basis().iter().enumerate() {
        if !v.rho10(e).is_zero() {
            return Err(Error::refused(what, format!("k₁[{i}]▷")));
        }
    }
    Ok(())
}

/// First basis vector `e` of `k` with `i_e c ≠ 0`, as a witness string.
fn contraction_witness(c: &Cochain, k: &GradedSubspace, g: &Lie2Algebra, t: &mut Tally) {
    let (n0, n1) = g.dims();
    let e0s: Vec<QVec> = (0..n0).map(|i| g.e0(i)).collect();
    let e1s: Vec<QVec> = (0..n1).map(|i| g.e1(i)).collect();
    for (b, f) in c.blocks.iter().zip(&c.parts) {
        if f.is_zero() {
            continue;
        }
        if b.p >= 1 {
            let rest = MultiTensor::zero(b.p - 1, b.q, n0, n1, b.target(), 0);
            for (i, e) in k.s0.basis().iter().enumerate() {
                for (xs, as_) in rest.basis_tuples() {
                    let mut xv: Vec<&[Rational]> = vec![e];
                    xv.extend(xs.iter().map(|&x| e0s[x].as_slice()));
                    let av: Vec<&[Rational]> = as_.iter().map(|&a| e1s[a].as_slice()).collect();
                    t.case(is_zero_vec(&f.eval(&xv, &av)), || format!("e = k₀[{i}] in block {b} with x{xs:?} a{as_:?}"));
                }
            }
        }
        if b.q >= 1 {
            let rest = MultiTensor::zero(b.p, b.q - 1, n0, n1, b.target(), 0);
            for (i, e) in k.s1.basis().iter().enumerate() {
                for (xs, as_) in rest.basis_tuples() {
                    let xv: Vec<&[Rational]> = xs.iter().map(|&x| e0s[x].as_slice()).collect();
                    let mut av: Vec<&[Rational]> = vec![e];
                    av.extend(as_.iter().map(|&a| e1s[a].as_slice()));
                    t.case(is_zero_vec(&f.eval(&xv, &av)), || format!("e = k₁[{i}] in block {b} with x{xs:?} a{as_:?}"));
                }
            }
        }
    }
}

/// Checks that `D^g λ` vanishes whenever an argument lies in `k`; when it
/// does, recovers `θ` on `h = g/k` and checks it is a cocycle.
pub fn check_lambda_condition(v: &Lie2Module, k: &GradedSubspace, lambda: &Cochain) -> Result<LambdaCheck> {
    if lambda.degree != 2 {
        return Err(Error::Shape("λ must be a degree-2 cochain".into()));
    }
    let g = &v.algebra;
    let quo = quotient(g, k)?;
    require_pulled_back(v, k)?;
    let h_module = descend_module(v, &quo)?;
    let dl = apply_coboundary(v, lambda);
    let mut verdict = Verdict::new();
    let mut t = Tally::new();
    contraction_witness(&dl, k, g, &mut t);
    t.into_verdict(&mut verdict, LAMBDA_CONDITION[0]);
    if !verdict.passed() {
        return Ok(LambdaCheck { verdict, quotient: quo, h_module, theta: None });
    }
    let theta = pull_back(&dl, &quo.section, &h_module)?;
    let back = pull_back(&theta, &quo.projection.maps, v)?;
    verdict.expect(LAMBDA_CONDITION[1], back == dl, || back.sub(&dl).first_nonzero().unwrap_or_default());
    let dt = apply_coboundary(&h_module, &theta);
    verdict.expect(LAMBDA_CONDITION[2], dt.is_zero(), || dt.first_nonzero().unwrap_or_default());
    Ok(LambdaCheck { verdict, quotient: quo, h_module, theta: Some(theta) })
}

fn join(a: &[Rational], b: &[Rational]) -> QVec {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// `ε_λ = (k ⊕_λ V, g, φ^λ, i ⊕ 0)`; `m` has the `k` coordinates first.
pub fn epsilon_lambda(v: &Lie2Module, k: &GradedSubspace, lambda: &Cochain) -> Result<CrossedModule> {
    let chk = check_lambda_condition(v, k, lambda)?;
    refuse_first(&chk.verdict)?;
    let g = &v.algebra;
    let (n0, n1) = g.dims();
    let (kk0, kk1) = k.dims();
    let (v0, v1) = (v.v0(), v.v1());
    let (t0, t1) = (kk0 + v0, kk1 + v1);
    let (b0, b1) = (k.s0.basis(), k.s1.basis());
    let c0 = |x: &[Rational]| k.s0.coordinates(x).expect("k is an ideal");
    let c1 = |x: &[Rational]| k.s1.coordinates(x).expect("k is an ideal");
    let (l0, l1, l2, l3) = (lambda.get(0, 1, 0), lambda.get(2, 0, 0), lambda.get(1, 1, 1), lambda.get(3, 0, 1));
    let zk0 = || zero_vec(kk0);
    let zk1 = || zero_vec(kk1);

    let diff_cols: Vec<QVec> = (0..t1)
        .map(|j| {
            if j < kk1 {
                join(&c0(&g.d(&b1[j])), &l0.eval(&[], &[&b1[j]]))
            } else {
                join(&zk0(), &v.space.diff.column(j - kk1))
            }
        })
        .collect();
    let space = TwoTermSpace::new(t0, t1, RationalMatrix::from_columns(&diff_cols, t0))?;
    let l2_00 = MultiTensor::from_fn(2, 0, t0, t1, Target::V0, t0, |xs, _| {
        let (i, j) = (xs[0], xs[1]);
        if j < kk0 {
            join(&c0(&g.br00(&b0[i], &b0[j])), &l1.eval(&[&b0[i], &b0[j]], &[]))
        } else {
            zero_vec(t0)
        }
    });
    let l2_01 = MultiTensor::from_fn(1, 1, t0, t1, Target::V1, t1, |xs, as_| {
        let (i, a) = (xs[0], as_[0]);
        if i < kk0 && a < kk1 {
            join(&c1(&g.br01(&b0[i], &b1[a])), &l2.eval(&[&b0[i]], &[&b1[a]]))
        } else {
            zero_vec(t1)
        }
    });
    let l3m = MultiTensor::from_fn(3, 0, t0, t1, Target::V1, t1, |xs, _| {
        if xs[2] < kk0 {
            let (x, y, z) = (&b0[xs[0]], &b0[xs[1]], &b0[xs[2]]);
            join(&c1(&g.l3v(x, y, z)), &l3.eval(&[x, y, z], &[]))
        } else {
            zero_vec(t1)
        }
    });
    let m = Lie2Algebra::new(space, l2_00, l2_01, l3m)?;

    let cols = |f: &dyn Fn(usize) -> QVec, n: usize, rows: usize| {
        let cs: Vec<QVec> = (0..n).map(f).collect();
        RationalMatrix::from_columns(&cs, rows)
    };
    let act00 = (0..n0)
        .map(|x| {
            let ex = g.e0(x);
            cols(
                &|c| {
                    if c < kk0 {
                        join(&c0(&g.br00(&ex, &b0[c])), &l1.eval(&[&ex, &b0[c]], &[]))
                    } else {
                        join(&zk0(), &v.act00[x].column(c - kk0))
                    }
                },
                t0,
                t0,
            )
        })
        .collect();
    let act01 = (0..n0)
        .map(|x| {
            let ex = g.e0(x);
            cols(
                &|c| {
                    if c < kk1 {
                        join(&c1(&g.br01(&ex, &b1[c])), &l2.eval(&[&ex], &[&b1[c]]))
                    } else {
                        join(&zk1(), &v.act01[x].column(c - kk1))
                    }
                },
                t1,
                t1,
            )
        })
        .collect();
    let act10 = (0..n1)
        .map(|a| {
            let ea = g.e1(a);
            cols(
                &|c| {
                    if c < kk0 {
                        join(&c1(&neg_vec(&g.br01(&b0[c], &ea))), &neg_vec(&l2.eval(&[&b0[c]], &[&ea])))
                    } else {
                        join(&zk1(), &v.act10[a].column(c - kk0))
                    }
                },
                t0,
                t1,
            )
        })
        .collect();
    let act2 = BasisIndexer::get(n0, 2, true)
        .tuples()
        .iter()
        .map(|p| {
            let (ex, ey) = (g.e0(p[0]), g.e0(p[1]));
            cols(
                &|c| {
                    if c < kk0 {
                        join(&c1(&neg_vec(&g.l3v(&ex, &ey, &b0[c]))), &neg_vec(&l3.eval(&[&ex, &ey, &b0[c]], &[])))
                    } else {
                        join(&zk1(), &v.rho2_basis(p[0], p[1]).column(c - kk0))
                    }
                },
                t0,
                t1,
            )
        })
        .collect();
    let module = Lie2Module::new(g.clone(), m.space.clone(), act00, act01, act10, act2)?;
    let lphi0 = (0..n0)
        .map(|x| {
            let ex = g.e0(x);
            MultiTensor::from_fn(2, 0, t0, t1, Target::V1, t1, |ys, _| {
                if ys[1] < kk0 {
                    let (a, b) = (&b0[ys[0]], &b0[ys[1]]);
                    join(&c1(&g.l3v(&ex, a, b)), &l3.eval(&[&ex, a, b], &[]))
                } else {
                    zero_vec(t1)
                }
            })
        })
        .collect();
    let phi = GradedMap::new(
        k.s0.inclusion().hstack(&RationalMatrix::zeros(n0, v0)),
        k.s1.inclusion().hstack(&RationalMatrix::zeros(n1, v1)),
    );
    let cm = CrossedModule {
        phi2: MultiTensor::zero(2, 0, t0, t1, Target::V1, n1),
        sigma: zero_sigma(n0, n1, t0),
        action: DerivAction { module, lphi0 },
        phi,
        m,
        g: g.clone(),
    };
    refuse_first(&check_crossed_module(&cm)?)?;
    Ok(cm)
}

/// `(F, Id, τ) : ε_{λ+DA+π*R} → ε_λ` with its inverse linear parts.
#[derive(Clone, Debug)]
pub struct GaugeTransformation {
    pub source: CrossedModule,
    pub target: CrossedModule,
    pub morphism: CrossedModuleMorphism,
    /// `(F₀⁻¹, F₁⁻¹)`.
    pub inverse: GradedMap,
}

/// The gauge transformation determined by `A ∈ C¹(g, V)` and `R ∈ C²(h, V)`.
pub fn gauge_transform(
    v: &Lie2Module,
    k: &GradedSubspace,
    lambda: &Cochain,
    a: &Cochain,
    r: &Cochain,
) -> Result<GaugeTransformation> {
    if a.degree != 1 || r.degree != 2 {
        return Err(Error::Shape("A must have degree 1 and R degree 2".into()));
    }
    let quo = quotient(&v.algebra, k)?;
    let shifted = lambda.add(&apply_coboundary(v, a)).add(&pull_back(r, &quo.projection.maps, v)?);
    let source = epsilon_lambda(v, k, &shifted)?;
    let target = epsilon_lambda(v, k, lambda)?;
    let g = &v.algebra;
    let (kk0, kk1) = k.dims();
    let (v0, v1) = (v.v0(), v.v1());
    let (t0, t1) = (kk0 + v0, kk1 + v1);
    let (a0, a1, a2) = degree_one_parts(a);
    let b0 = k.s0.basis();
    let shear = |n: usize, extra: usize, block: &RationalMatrix| {
        let mut f = RationalMatrix::identity(n + extra);
        for i in 0..extra {
            for j in 0..n {
                f.set(n + i, j, block.get(i, j).clone());
            }
        }
        f
    };
    let f0 = shear(kk0, v0, &a0.mul(&k.s0.inclusion()));
    let f1 = shear(kk1, v1, &a1.mul(&k.s1.inclusion()));
    let inverse = GradedMap::new(f0.inverse()?, f1.inverse()?);
    let f2 = MultiTensor::from_fn(2, 0, t0, t1, Target::V1, t1, |xs, _| {
        if xs[1] < kk0 {
            join(&zero_vec(kk1), &a2.eval(&[&b0[xs[0]], &b0[xs[1]]], &[]))
        } else {
            zero_vec(t1)
        }
    });
    let f = Lie2Hom::new(source.m.clone(), target.m.clone(), GradedMap::new(f0, f1), f2)?;
    let tau = (0..g.n0())
        .map(|x| {
            let ex = g.e0(x);
            let cs: Vec<QVec> = (0..t0)
                .map(|c| if c < kk0 { join(&zero_vec(kk1), &a2.eval(&[&ex, &b0[c]], &[])) } else { zero_vec(t1) })
                .collect();
            RationalMatrix::from_columns(&cs, t1)
        })
        .collect();
    let morphism = CrossedModuleMorphism { f, g: Lie2Hom::identity(g), tau };
    Ok(GaugeTransformation { source, target, morphism, inverse })
}
