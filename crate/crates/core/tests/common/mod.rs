//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod ce;
pub mod criteria;
pub mod mutate;

use std::path::{Path, PathBuf};

use lie2kit::classify::{epsilon_lambda, splice, SectionPair};
use lie2kit::crossmod::{four_term_sequence, CrossedModule, FourTermSequence};
use lie2kit::fixtures::*;
use lie2kit::graded::{GradedMap, TwoTermSpace};
use lie2kit::lie2core::Lie2Algebra;
use lie2kit::ratlin::{axpy, q, Rational, RationalMatrix};
use lie2kit::repcoh::{adjoint_module, Lie2Module};
use lie2kit::workspace::{Kind, Workspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .expect("fixtures directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

pub fn load(name: &str) -> Workspace {
    Workspace::load(&fixture_dir().join(name)).expect("fixture parses")
}

/// Every crossed module stored in the fixtures, plus those built from
/// extension and splice data.
pub fn fixture_crossed_modules() -> Vec<(String, CrossedModule)> {
    let mut out = Vec::new();
    for path in fixture_files() {
        let ws = Workspace::load(&path).expect("fixture parses");
        for (kind, name) in ws.names() {
            match kind {
                Kind::CrossedModule => out.push((name.to_string(), ws.crossed_module(name).expect("reads"))),
                Kind::Extension => {
                    let (v, k, lam) = ws.extension(name).expect("reads");
                    out.push((format!("ε({name})"), epsilon_lambda(&v, &k, &lam).expect("ε_λ")));
                }
                Kind::Splice => {
                    let (seq, lam) = ws.splice(name).expect("reads");
                    out.push((format!("splice({name})"), splice(&seq, &lam).expect("splice")));
                }
                _ => {}
            }
        }
    }
    out
}

/// Random `P = L·U` with unit diagonals and off-diagonal entries in `-2..=2`.
pub fn random_invertible(n: usize, r: &mut ChaCha8Rng) -> RationalMatrix {
    let mut l = RationalMatrix::identity(n);
    let mut u = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, q(r.gen_range(-2..=2)));
            u.set(j, i, q(r.gen_range(-2..=2)));
        }
    }
    l.mul(&u)
}

pub fn random_space(v0: usize, v1: usize, r: &mut ChaCha8Rng) -> TwoTermSpace {
    // rank ≤ 1 differential so that weight and trivial actions stay chain maps
    let mut d = RationalMatrix::zeros(v0, v1);
    if v0 > 0 && v1 > 0 && r.gen_bool(0.5) {
        d.set(r.gen_range(0..v0), r.gen_range(0..v1), q(r.gen_range(1..=2)));
    }
    TwoTermSpace::new(v0, v1, d).expect("shape")
}

pub fn base_algebras() -> Vec<(&'static str, Lie2Algebra)> {
    let line_d = TwoTermSpace::new(2, 1, RationalMatrix::from_ints(&[&[1], &[0]])).expect("shape");
    let wide_d = TwoTermSpace::new(1, 2, RationalMatrix::from_ints(&[&[1, -1]])).expect("shape");
    vec![
        ("aff1", aff1()),
        ("sl2", sl2()),
        ("heis", heis()),
        ("strict_aff1", strict_aff1()),
        ("skeletal_sl2", skeletal_sl2()),
        ("skeletal_aff1", skeletal_aff1()),
        ("abelian_d", Lie2Algebra::abelian(line_d)),
        ("abelian_wide", Lie2Algebra::abelian(wide_d)),
    ]
}

/// `x₀` acting by `diag(w)` on both degrees of `ℚ^v --id--> ℚ^v`-like spaces; only `aff1`.
pub fn weight_module(g: &Lie2Algebra, space: TwoTermSpace, w: i64) -> Lie2Module {
    let (v0, v1) = (space.dim(0), space.dim(1));
    let n0 = g.n0();
    let mut a00 = vec![RationalMatrix::zeros(v0, v0); n0];
    let mut a01 = vec![RationalMatrix::zeros(v1, v1); n0];
    a00[0] = RationalMatrix::identity(v0).scale(&q(w));
    a01[0] = RationalMatrix::identity(v1).scale(&q(w));
    let pairs = n0 * (n0.saturating_sub(1)) / 2;
    Lie2Module::new(g.clone(), space, a00, a01, vec![RationalMatrix::zeros(v1, v0); g.n1()], vec![RationalMatrix::zeros(v1, v0); pairs])
        .expect("weight module shape")
}

/// Valid `(algebra, module)` pairs with every graded piece of dimension ≤ 3.
pub fn base_pairs() -> Vec<(String, Lie2Module)> {
    let mut r = rng(17);
    let mut out = Vec::new();
    for (name, g) in base_algebras() {
        out.push((format!("{name}/trivial(1,0)"), Lie2Module::trivial(g.clone(), plain_space(1, 0))));
        out.push((format!("{name}/trivial(1,1)"), Lie2Module::trivial(g.clone(), identity_space())));
        let sp = random_space(2, 1, &mut r);
        out.push((format!("{name}/trivial(2,1)"), Lie2Module::trivial(g.clone(), sp)));
        out.push((format!("{name}/adjoint"), adjoint_module(&g)));
    }
    let a = aff1();
    for w in [1, -2] {
        out.push((format!("aff1/weight{w}(1,1)"), weight_module(&a, identity_space(), w)));
        out.push((format!("aff1/weight{w}(2,1)"), weight_module(&a, random_space(2, 1, &mut r), w)));
    }
    let (v, _, _) = heis_extension();
    out.push(("heis/extension V".into(), v));
    for seq in [sl2_sequence(), aff1_sequence()] {
        let n = if seq.sub.algebra == sl2() { "sl2" } else { "aff1" };
        out.push((format!("{n}/sequence middle"), seq.mid));
    }
    out
}

/// Module transported by random coordinate changes on both the algebra and `V`.
pub fn transported(m: &Lie2Module, seed: u64) -> Lie2Module {
    let mut r = rng(seed);
    let (n0, n1) = m.algebra.dims();
    let (p0, p1) = (random_invertible(n0, &mut r), random_invertible(n1, &mut r));
    let (u0, u1) = (random_invertible(m.v0(), &mut r), random_invertible(m.v1(), &mut r));
    m.transport(&u0, &u1)
        .and_then(|t| t.over_transported_algebra(&p0, &p1))
        .expect("invertible transport")
}

/// Base pairs plus one random transport of each.
pub fn generated_pairs() -> Vec<(String, Lie2Module)> {
    let base = base_pairs();
    let mut out = base.clone();
    for (i, (name, m)) in base.iter().enumerate() {
        out.push((format!("{name} transported"), transported(m, 1000 + i as u64)));
    }
    out
}

/// A second section pair: `s` moved by random elements of `Img φ`,
/// `q` moved by random elements of `ker φ`.
pub fn random_sections(base: &SectionPair, seq: &FourTermSequence, seed: u64) -> SectionPair {
    let mut r = rng(seed);
    let mut perturb = |m: &RationalMatrix, basis: &[Vec<Rational>]| {
        let mut out = m.clone();
        for j in 0..m.cols() {
            let mut c = out.column(j);
            for b in basis {
                axpy(&mut c, &q(r.gen_range(-2..=2)), b);
            }
            out.set_column(j, &c);
        }
        out
    };
    let s = GradedMap::new(perturb(&base.s.m0, seq.image.s0.basis()), perturb(&base.s.m1, seq.image.s1.basis()));
    let qm = GradedMap::new(perturb(&base.q.m0, seq.kernel.s0.basis()), perturb(&base.q.m1, seq.kernel.s1.basis()));
    SectionPair { s, q: qm }
}

pub fn sequence(cm: &CrossedModule) -> FourTermSequence {
    four_term_sequence(cm).expect("four-term sequence")
}
