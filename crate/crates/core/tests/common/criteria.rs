//! The acceptance criteria as functions returning a one-line summary.

use std::process::Command;
use std::time::{Duration, Instant};

use lie2kit::classify::{
    check_lambda_condition, connecting_map, epsilon_lambda, gauge_transform, mu, pull_back,
    splice, SectionPair,
};
use lie2kit::crossmod::{
    check_morphism, crossed_product, der_of, derivation_algebra, mapping_cone, split_crossed_product,
    DerivationAlgebra,
};
use lie2kit::lie2core::{check_lie2, check_lie3_strict};
use lie2kit::ratlin::{q, unit_vec, QVec, Rational, Subspace};
use lie2kit::repcoh::{
    apply_coboundary, class_coordinates, cochain_space, coboundary, cohomologous, cohomology, one_cocycle_residuals, Cochain,
    Lie2Module,
};
use lie2kit::workspace::{Kind, Workspace};
use rand::Rng;
use serde_json::Value;

use super::ce::{self, Rep};
use super::mutate;

pub type Outcome = Result<String, String>;

/// Runtime budget for criterion 1.
pub const D_SQUARED_BUDGET: Duration = Duration::from_secs(30);
/// Runtime budget for criterion 6.
pub const CLASSIFICATION_BUDGET: Duration = Duration::from_secs(60);
/// Minimum number of generated pairs for criterion 1.
pub const MIN_PAIRS: usize = 20;
/// Minimum number of crossed products for criterion 5.
pub const MIN_PRODUCTS: usize = 10;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn d_squared() -> Outcome {
    let start = Instant::now();
    let pairs = super::generated_pairs();
    ensure(pairs.len() >= MIN_PAIRS, || format!("only {} pairs", pairs.len()))?;
    let mut products = 0;
    for (name, m) in &pairs {
        let (a, b) = m.algebra.dims();
        ensure(a.max(b).max(m.v0()).max(m.v1()) <= 3, || format!("{name}: a piece exceeds dimension 3"))?;
        ensure(check_lie2(&m.algebra).passed(), || format!("{name}: invalid algebra"))?;
        for n in -1..=3 {
            let p = coboundary(m, n + 1).map_err(|e| e.to_string())?.mul(&coboundary(m, n).map_err(|e| e.to_string())?);
            ensure(p.is_zero(), || format!("{name}: D² ≠ 0 from degree {n}"))?;
            products += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < D_SQUARED_BUDGET, || format!("took {t:?}, budget {D_SQUARED_BUDGET:?}"))?;
    Ok(format!("{} pairs, {products} products D(n+1)·D(n) exactly zero for n in -1..=3, {t:.2?}", pairs.len()))
}

fn library_betti(m: &Lie2Module, k: usize) -> Result<usize, String> {
    cohomology(m, k as i64).map(|h| h.betti).map_err(|e| e.to_string())
}

pub fn classical_reduction() -> Outcome {
    use lie2kit::fixtures::{aff1, plain_space, sl2};
    let cases = [
        ("sl2", Lie2Module::trivial(sl2(), plain_space(1, 0)), ce::sl2()),
        ("aff1", Lie2Module::trivial(aff1(), plain_space(1, 0)), ce::aff1()),
    ];
    let mut report = Vec::new();
    for (name, m, g) in &cases {
        let rep = Rep::trivial(g, 1);
        let mut lib = Vec::new();
        for k in 0..=3 {
            let (a, b) = (library_betti(m, k)?, ce::betti(g, &rep, k));
            ensure(a == b, || format!("{name}: H^{k} library {a}, oracle {b}"))?;
            lib.push(a);
        }
        report.push(format!("{name} {lib:?}"));
    }
    let sl2b: Vec<usize> = (1..=3).map(|k| library_betti(&cases[0].1, k)).collect::<Result<_, _>>()?;
    ensure(sl2b == [0, 0, 1], || format!("sl2 H¹..H³ = {sl2b:?}"))?;
    Ok(format!("betti match the oracle: {}", report.join(", ")))
}

pub fn mapping_cone_strict() -> Outcome {
    let cms = super::fixture_crossed_modules();
    let mut cone_hits = 0;
    for (name, c) in &cms {
        let cone = mapping_cone(c).map_err(|e| format!("{name}: {e}"))?;
        let v = check_lie3_strict(&cone);
        ensure(v.passed(), || format!("{name}: {v}"))?;
        let hits: Vec<_> = mutate::fixture_mutations(c).iter().filter_map(mutate::detection).collect();
        let (k0, k1) = c.m.dims();
        ensure(k0 + k1 == 0 || !hits.is_empty(), || format!("{name}: no mutation detected"))?;
        ensure(hits.iter().all(|(_, w)| !w.is_empty()), || format!("{name}: detection without witness"))?;
        if !cone.entries().is_empty() {
            let (_, w) = mutate::cone_detection(&cone).ok_or_else(|| format!("{name}: cone mutation undetected"))?;
            ensure(!w.is_empty(), || format!("{name}: cone detection without witness"))?;
            cone_hits += 1;
        }
    }
    for needed in ["strict_aff1_der", "skeletal_aff1_der", "aff1_ideal_cm", "strict_aff1_ideal_cm"] {
        ensure(cms.iter().any(|(n, _)| n == needed), || format!("fixture {needed} missing"))?;
    }
    Ok(format!("{} cones pass n = 1..5; mutations detected with witnesses ({cone_hits} via the cone itself)", cms.len()))
}

fn check_der(name: &str, der: &DerivationAlgebra) -> Result<(), String> {
    let v = check_lie2(&der.algebra);
    ensure(v.passed(), || format!("{name}: Der is not a Lie 2-algebra: {v}"))?;
    ensure(der.algebra.l3.is_zero(), || format!("{name}: Der is not strict"))?;
    let data = der.data();
    let m = &der.module;
    let k0 = der.der0().dim();
    let d0 = coboundary(m, 0).map_err(|e| e.to_string())?;
    let inner: Vec<QVec> = (0..d0.cols()).map(|c| d0.column(c)).collect();
    let inn = Subspace::span(d0.rows(), &inner);
    for i in 0..k0 {
        let x = der.element0(i);
        for j in i + 1..k0 {
            let r = one_cocycle_residuals(m, &data.bracket(&x, &der.element0(j)));
            ensure(r.passed(), || format!("{name}: bracket of X{i}, X{j}: {r}"))?;
        }
        for (a, y) in inner.iter().enumerate() {
            let y = lie2kit::repcoh::DerPair::from_flat(m, y).map_err(|e| e.to_string())?;
            let b = data.bracket(&x, &y).flatten(m);
            ensure(inn.contains(&b), || format!("{name}: {{X{i}, D(e{a})}} is not inner"))?;
        }
    }
    Ok(())
}

pub fn derivations() -> Outcome {
    let mut n = 0;
    for (name, c) in super::fixture_crossed_modules() {
        let der = derivation_algebra(&c.action.module, &c.phi, &c.sigma).map_err(|e| format!("{name}: {e}"))?;
        check_der(&name, &der)?;
        n += 1;
    }
    for path in super::fixture_files() {
        let ws = Workspace::load(&path).map_err(|e| e.to_string())?;
        for (kind, name) in ws.names() {
            if kind == Kind::Algebra {
                let g = ws.algebra(name).map_err(|e| e.to_string())?;
                let der = der_of(&g).map_err(|e| format!("{name}: {e}"))?;
                check_der(name, &der)?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} derivation algebras strict and valid; brackets are 1-cocycles; Inn₀ is an ideal"))
}

pub fn product_round_trip() -> Outcome {
    let mut cms = super::fixture_crossed_modules();
    for (name, m) in super::base_pairs().into_iter().take(8) {
        let g = m.algebra;
        if let Ok(c) = lie2kit::crossmod::ideal_crossed_module(&g, &lie2kit::lie2core::GradedSubspace::full(&g)) {
            cms.push((format!("{name} ⊃ g"), c));
        }
    }
    for (name, c) in &cms {
        let p = crossed_product(&c.g, &c.m, &c.action).map_err(|e| format!("{name}: {e}"))?;
        let (t0, t1) = p.dims();
        let (n0, n1) = c.g.dims();
        let u0: Vec<QVec> = (0..t0).map(|i| unit_vec(t0, i)).collect();
        let u1: Vec<QVec> = (0..t1).map(|i| unit_vec(t1, i)).collect();
        let s = split_crossed_product(&p, (&u0[..n0], &u1[..n1]), (&u0[n0..], &u1[n1..]))
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(s.action == c.action && s.m == c.m && s.g == c.g, || format!("{name}: split differs"))?;
    }
    ensure(cms.len() >= MIN_PRODUCTS, || format!("only {} fixtures", cms.len()))?;
    Ok(format!("{} crossed products split back to identical action tensors", cms.len()))
}

fn class_of(c: &lie2kit::crossmod::CrossedModule, s: Option<&SectionPair>) -> Result<QVec, String> {
    mu(c, s).map(|m| m.class_id).map_err(|e| e.to_string())
}

fn random_cochain(m: &Lie2Module, n: i64, seed: u64) -> Cochain {
    let mut r = super::rng(seed);
    let flat: Vec<Rational> = (0..cochain_space(m, n).total).map(|_| q(r.gen_range(-2..=2))).collect();
    Cochain::from_flat(m, n, &flat).expect("flat length")
}

pub fn classification() -> Outcome {
    let start = Instant::now();
    // (a) section independence
    let mut strong = 0;
    for (name, c) in super::fixture_crossed_modules() {
        if !c.is_strong() {
            continue;
        }
        let seq = super::sequence(&c);
        let base = SectionPair::auto(&c, &seq);
        let mut ids = vec![class_of(&c, None).map_err(|e| format!("{name}: {e}"))?];
        for (i, s) in [base.shifted(&seq), super::random_sections(&base, &seq, 5), super::random_sections(&base, &seq, 6)]
            .iter()
            .enumerate()
        {
            s.validate(&c, &seq).map_err(|e| format!("{name}: section pair {i}: {e}"))?;
            ids.push(class_of(&c, Some(s))?);
        }
        ensure(ids.windows(2).all(|w| w[0] == w[1]), || format!("(a) {name}: class ids {ids:?}"))?;
        strong += 1;
    }
    // (b) μ(ε_λ) against θ, and (c) gauge invariance
    let mut ext = 0;
    let mut gauges = 0;
    for path in super::fixture_files() {
        let ws = Workspace::load(&path).map_err(|e| e.to_string())?;
        for (kind, name) in ws.names() {
            match kind {
                Kind::Extension => {
                    let (v, k, lam) = ws.extension(name).map_err(|e| e.to_string())?;
                    classify_extension(name, &v, &k, &lam)?;
                    ext += 1;
                    let chk = check_lambda_condition(&v, &k, &lam).map_err(|e| e.to_string())?;
                    for seed in 0..2 {
                        let a = random_cochain(&v, 1, 300 + seed);
                        let r = random_cochain(&chk.h_module, 2, 400 + seed);
                        check_gauge(&format!("{name} random {seed}"), &v, &k, &lam, &a, &r)?;
                        gauges += 1;
                    }
                }
                Kind::Gauge => {
                    let ((v, k, lam), a, r) = ws.gauge(name).map_err(|e| e.to_string())?;
                    let r = match r {
                        Some((_, r)) => r,
                        None => Cochain::zero(&check_lambda_condition(&v, &k, &lam).map_err(|e| e.to_string())?.h_module, 2),
                    };
                    check_gauge(name, &v, &k, &lam, &a, &r)?;
                    gauges += 1;
                }
                _ => {}
            }
        }
    }
    // (d) splice against the connecting map
    let ws = super::load("splice.json");
    let mut splices = Vec::new();
    for (kind, name) in ws.names() {
        if kind == Kind::Splice {
            let (seq, lam) = ws.splice(name).map_err(|e| e.to_string())?;
            let conn = connecting_map(&seq, lam.degree).map_err(|e| e.to_string())?;
            ensure(conn.verdict.passed(), || format!("(d) {name}: {}", conn.verdict))?;
            let expected = conn.matrix.mul_vec(&class_coordinates(&seq.quot, &lam).map_err(|e| e.to_string())?);
            let c = splice(&seq, &lam).map_err(|e| e.to_string())?;
            let got = class_of(&c, None)?;
            ensure(got == expected, || format!("(d) {name}: μ {got:?} vs ∂[λ] {expected:?}"))?;
            splices.push(format!("{name} {}", fmt(&got)));
        }
    }
    ensure(splices.iter().any(|s| s.starts_with("sl2_cartan_splice")), || "splice fixture missing".into())?;
    let t = start.elapsed();
    ensure(t < CLASSIFICATION_BUDGET, || format!("took {t:?}, budget {CLASSIFICATION_BUDGET:?}"))?;
    Ok(format!(
        "(a) {strong} strong crossed modules, 4 section pairs each; (b) {ext} extensions; (c) {gauges} gauges; (d) {}; {t:.2?}",
        splices.join(", ")
    ))
}

fn fmt(v: &[Rational]) -> String {
    lie2kit::ratlin::format_vec(v)
}

fn classify_extension(name: &str, v: &Lie2Module, k: &lie2kit::lie2core::GradedSubspace, lam: &Cochain) -> Result<(), String> {
    let e = |x: lie2kit::Error| format!("(b) {name}: {x}");
    let chk = check_lambda_condition(v, k, lam).map_err(e)?;
    ensure(chk.verdict.passed(), || format!("(b) {name}: {}", chk.verdict))?;
    let theta = chk.theta.clone().ok_or_else(|| format!("(b) {name}: θ undefined"))?;
    let c = epsilon_lambda(v, k, lam).map_err(e)?;
    let m = mu(&c, None).map_err(e)?;
    ensure(m.sequence.module == chk.h_module, || format!("(b) {name}: coefficient modules differ"))?;
    let s_lam = pull_back(lam, &m.sections.s, &chk.h_module).map_err(e)?;
    let sum = m.theta.add(&apply_coboundary(&chk.h_module, &s_lam));
    ensure(sum == theta, || format!("(b) {name}: θ_μ + D(s*λ) ≠ θ at {}", sum.sub(&theta).first_nonzero().unwrap_or_default()))?;
    ensure(cohomologous(&chk.h_module, &m.theta, &theta).map_err(e)?, || format!("(b) {name}: classes differ"))?;
    Ok(())
}

fn check_gauge(
    name: &str,
    v: &Lie2Module,
    k: &lie2kit::lie2core::GradedSubspace,
    lam: &Cochain,
    a: &Cochain,
    r: &Cochain,
) -> Result<(), String> {
    let gt = gauge_transform(v, k, lam, a, r).map_err(|e| format!("(c) {name}: {e}"))?;
    let mv = check_morphism(&gt.source, &gt.target, &gt.morphism).map_err(|e| e.to_string())?;
    ensure(mv.passed(), || format!("(c) {name}: {mv}"))?;
    let (s, t) = (class_of(&gt.source, None)?, class_of(&gt.target, None)?);
    ensure(s == t, || format!("(c) {name}: {s:?} vs {t:?}"))?;
    Ok(())
}

pub fn mutation_sensitivity() -> Outcome {
    let axioms = mutate::axiom_mutations();
    for (name, c) in &axioms {
        mutate::only_axiom(c, name).map_err(|e| format!("{name}: {e}"))?;
    }
    let homs = mutate::hom_mutations();
    for (name, f) in &homs {
        mutate::only_condition(f, name).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} crossed-module checks and {} homomorphism conditions each isolated by one mutation", axioms.len(), homs.len()))
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_lie2kit"))
        .args(args)
        .arg("--json")
        .env_remove("LIE2KIT_DEGREE_CEILING")
        .output()
        .expect("binary runs");
    let v = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    (o.status.code().unwrap_or(-1), v, String::from_utf8_lossy(&o.stderr).into_owned())
}

pub fn cli_contract() -> Outcome {
    let mut runs = 0;
    let mut expect = |args: &[&str], code: i32| -> Result<Value, String> {
        runs += 1;
        let (c, v, err) = run(args);
        ensure(c == code, || format!("{args:?}: exit {c}, expected {code}: {err}"))?;
        Ok(v)
    };
    for path in super::fixture_files() {
        let file = path.to_str().unwrap();
        expect(&["validate", "--file", file], 0)?;
        let ws = Workspace::load(&path).map_err(|e| e.to_string())?;
        for (kind, name) in ws.names() {
            match kind {
                Kind::CrossedModule => {
                    expect(&["mapping-cone", "--file", file, "--entity", name], 0)?;
                    let strong = ws.crossed_module(name).map_err(|e| e.to_string())?.is_strong();
                    expect(&["mu", "--file", file, "--entity", name], if strong { 0 } else { 1 })?;
                }
                Kind::Extension | Kind::Gauge | Kind::Splice => {
                    let v = expect(&["mu", "--file", file, "--entity", name], 0)?;
                    if kind == Kind::Splice {
                        let c = expect(&["connecting", "--file", file, "--entity", name], 0)?;
                        ensure(v["data"]["class_id"] == c["data"]["class"], || format!("{name}: μ ≠ ∂[λ]"))?;
                    }
                }
                _ => {}
            }
        }
    }
    for (module, file, g) in [("sl2_trivial", "sl2.json", ce::sl2()), ("aff1_trivial", "aff1.json", ce::aff1())] {
        let v = expect(&["cohomology", "--file", &super::fixture_dir().join(file).display().to_string(), "--entity", module], 0)?;
        let rep = Rep::trivial(&g, 1);
        for row in v["data"]["degrees"].as_array().ok_or("no degree table")? {
            let k = row["degree"].as_u64().ok_or("degree")? as usize;
            let want = ce::betti(&g, &rep, k) as u64;
            ensure(row["betti"] == want, || format!("{module}: H^{k} = {}, oracle {want}", row["betti"]))?;
        }
    }
    // failure and malformed-input exit codes through the file format
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let text = std::fs::read_to_string(super::fixture_dir().join("aff1.json")).map_err(|e| e.to_string())?;
    let mut bad: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    bad["modules"]["aff1_adjoint"]["act00"][0][3] = Value::from("2");
    let mutated = dir.path().join("mutated.json");
    std::fs::write(&mutated, bad.to_string()).map_err(|e| e.to_string())?;
    expect(&["validate", "--file", mutated.to_str().unwrap()], 1)?;
    bad["algebras"]["aff1"].as_object_mut().ok_or("shape")?.remove("l2_00");
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, bad.to_string()).map_err(|e| e.to_string())?;
    expect(&["validate", "--file", broken.to_str().unwrap()], 2)?;
    Ok(format!("{runs} invocations with the expected exit codes; betti, cones, and μ agree with the library criteria"))
}
