//! The `lie2kit` command line: thin drivers over the library that read and
//! write [`Workspace`] files.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure or
//! refusal, 2 on malformed input.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classify::{
    check_lambda_condition, connecting_map, elementary_equivalence_check, epsilon_lambda, gauge_transform, mu,
    pull_back, splice, ModuleSequence, SectionPair,
};
use crate::crossmod::{
    check_crossed_module, check_morphism, crossed_product, der_of, derivation_algebra, derivation_crossed_module,
    h1_lie_algebra, inner_ideal_residuals, mapping_cone, minus_d_derivation_residuals, CrossedModule,
    DerivationAlgebra,
};
use crate::error::{Error, Result};
use crate::lie2core::{check_hom, check_lie2, check_lie3_strict, is_ideal, Lie2Hom};
use crate::ratlin::{format_rational, QVec, Rational};
use crate::repcoh::{
    apply_coboundary, check_action, class_coordinates, cohomologous, cohomology, degree_ceiling, Cochain,
    Lie2Module,
};
use crate::report::Verdict;
use crate::workspace::{Kind, Workspace};

#[derive(Parser, Debug, Clone)]
#[command(name = "lie2kit", version, about = "Lie 2-algebras over ℚ: checks, cohomology, crossed modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Workspace file to read.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Entity to act on.
    #[arg(long, global = true)]
    pub entity: Option<String>,
    /// Cohomological degree.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub degree: Option<i64>,
    /// Where to write the workspace with the constructed entities added.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the machine-readable report instead of the human one.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Check the axioms of one entity, or of every entity in the file.
    Validate,
    /// Betti numbers and representative cocycles of a module.
    Cohomology,
    /// The Lie 2-algebra g ▷ m of a crossed module.
    CrossedProduct,
    /// The strict Lie 3-algebra on the mapping cone of a crossed module.
    MappingCone,
    /// The derivation crossed module (g, Der g) of an algebra.
    Derivations,
    /// H¹ of an algebra (adjoint) or of a crossed module.
    H1,
    /// The class μ ∈ H³(h, V) of a strong crossed module, extension, gauge, or splice datum.
    Mu,
    /// The gauge transformation of an extension datum.
    Gauge,
    /// The crossed module spliced from a short exact sequence and a 2-cocycle.
    Splice,
    /// The connecting map of a short exact sequence.
    Connecting,
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    /// Human-readable body (the verdict is appended when printing).
    pub text: String,
    pub data: Value,
    /// The input workspace plus whatever was constructed.
    pub workspace: Workspace,
}

/// 2 for malformed input, 1 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Reference(_) | Error::Shape(_) | Error::Arity { .. } => 2,
        _ => 1,
    }
}

/// Runs a parsed command line; returns `(exit code, stdout, stderr)`.
pub fn run(cli: &Cli) -> (i32, String, String) {
    let Some(file) = &cli.file else {
        return (2, String::new(), "error: --file is required\n".into());
    };
    let result = Workspace::load(file).and_then(|ws| execute(cli.command, ws, cli.entity.as_deref(), cli.degree));
    match result {
        Err(e) => {
            let code = exit_code(&e);
            let out = if cli.json {
                format!("{}\n", json!({"passed": false, "exit": code, "error": e.to_string()}))
            } else {
                String::new()
            };
            (code, out, format!("error: {e}\n"))
        }
        Ok(o) => {
            let passed = o.verdict.passed();
            if let Some(path) = &cli.out {
                if let Err(e) = o.workspace.save(path) {
                    return (2, String::new(), format!("error: {e}\n"));
                }
            }
            let out = if cli.json {
                let v = json!({"passed": passed, "checks": o.verdict, "data": o.data});
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            } else {
                format!("{}{}{}\n", o.text, o.verdict, if passed { "PASSED" } else { "FAILED" })
            };
            (if passed { 0 } else { 1 }, out, String::new())
        }
    }
}

/// Entry point for the binary.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (code, out, err) = run(&cli);
    print!("{out}");
    eprint!("{err}");
    code
}

fn need<'a>(entity: Option<&'a str>, what: &str) -> Result<&'a str> {
    entity.ok_or_else(|| Error::Reference(format!("--entity: this command needs {what}")))
}

fn kind_of(ws: &Workspace, name: &str) -> Result<Kind> {
    ws.kind_of(name).ok_or_else(|| Error::Reference(format!("--entity: no entity named {name:?}")))
}

fn wrong_kind(name: &str, k: Kind, what: &str) -> Error {
    Error::Reference(format!("--entity: {name:?} is in {}, expected {what}", k.key()))
}

pub fn execute(cmd: Command, ws: Workspace, entity: Option<&str>, degree: Option<i64>) -> Result<Outcome> {
    match cmd {
        Command::Validate => validate(ws, entity),
        Command::Cohomology => cohomology_cmd(ws, need(entity, "a module")?, degree),
        Command::CrossedProduct => crossed_product_cmd(ws, need(entity, "a crossed module")?),
        Command::MappingCone => mapping_cone_cmd(ws, need(entity, "a crossed module")?),
        Command::Derivations => derivations_cmd(ws, need(entity, "an algebra")?),
        Command::H1 => h1_cmd(ws, need(entity, "an algebra or crossed module")?),
        Command::Mu => mu_cmd(ws, need(entity, "a crossed module or an extension, gauge, or splice datum")?),
        Command::Gauge => gauge_cmd(ws, need(entity, "a gauge datum")?),
        Command::Splice => splice_cmd(ws, need(entity, "a splice datum")?),
        Command::Connecting => connecting_cmd(ws, need(entity, "a sequence or splice datum")?, degree.unwrap_or(2)),
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    crate::ratlin::format_vec(v)
}

fn vec_json(v: &[Rational]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

/// Checks of one entity; `Err` only for malformed input or refusals.
pub fn validate_entity(ws: &Workspace, kind: Kind, name: &str) -> Result<Verdict> {
    let mut v = Verdict::new();
    match kind {
        Kind::Space => {
            ws.space(name)?;
            v.expect("well-formed", true, String::new);
        }
        Kind::Algebra => v = check_lie2(&ws.algebra(name)?),
        Kind::Module => {
            let m = ws.module(name)?;
            v.absorb("algebra", check_lie2(&m.algebra));
            v.absorb("", check_action(&m));
        }
        Kind::Homomorphism => v = check_hom(&ws.homomorphism(name)?),
        Kind::Ideal => {
            let (g, k) = ws.ideal(name)?;
            v = is_ideal(&g, &k)?;
        }
        Kind::Cochain => {
            ws.cochain(name)?;
            v.expect("well-formed", true, String::new);
        }
        Kind::CrossedModule => v = check_crossed_module(&ws.crossed_module(name)?)?,
        Kind::Morphism => {
            let (a, b, f) = ws.morphism(name)?;
            v = check_morphism(&a, &b, &f)?;
        }
        Kind::Sequence => v = ws.sequence(name)?.check_exact(),
        Kind::Lie3 => v = check_lie3_strict(&ws.lie3(name)?),
        Kind::Extension => {
            let (m, k, lam) = ws.extension(name)?;
            v = check_lambda_condition(&m, &k, &lam)?.verdict;
        }
        Kind::Gauge => {
            let gt = build_gauge(ws, name)?;
            v = check_morphism(&gt.source, &gt.target, &gt.morphism)?;
        }
        Kind::Splice => {
            let (seq, lam) = ws.splice(name)?;
            v = check_crossed_module(&splice(&seq, &lam)?)?;
        }
    }
    Ok(v)
}

fn validate(ws: Workspace, entity: Option<&str>) -> Result<Outcome> {
    let targets: Vec<(Kind, String)> = match entity {
        Some(n) => vec![(kind_of(&ws, n)?, n.to_string())],
        None => ws.names().into_iter().map(|(k, n)| (k, n.to_string())).collect(),
    };
    let mut verdict = Verdict::new();
    let mut text = String::new();
    let mut rows = Vec::new();
    for (k, n) in &targets {
        let v = validate_entity(&ws, *k, n)?;
        let _ = writeln!(text, "{} {n}: {}", k.key(), if v.passed() { "ok" } else { "FAILED" });
        rows.push(json!({"kind": k.key(), "name": n, "passed": v.passed()}));
        verdict.absorb(&format!("{}.{n}", k.key()), v);
    }
    Ok(Outcome { verdict, text, data: Value::from(rows), workspace: ws })
}

/// Re-reads a written entity and compares it with what was built.
fn rewritten<T: PartialEq>(v: &mut Verdict, name: &str, built: &T, read: Result<T>) {
    let ok = matches!(&read, Ok(x) if x == built);
    v.expect(format!("written entity {name} reads back unchanged"), ok, || match read {
        Err(e) => e.to_string(),
        Ok(_) => "values differ".into(),
    });
}

fn module_checks(m: &Lie2Module) -> Verdict {
    let mut v = Verdict::new();
    v.absorb("algebra", check_lie2(&m.algebra));
    v.absorb("", check_action(m));
    v
}

fn cochain_text(c: &Cochain) -> String {
    let mut parts = Vec::new();
    for (b, t) in c.blocks.iter().zip(&c.parts) {
        for (xs, as_, i, val) in t.entries() {
            parts.push(format!("{b} x{xs:?} a{as_:?} -> e{i}: {}", format_rational(&val)));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

fn cohomology_cmd(mut ws: Workspace, name: &str, degree: Option<i64>) -> Result<Outcome> {
    let m = match kind_of(&ws, name)? {
        Kind::Module => ws.module(name)?,
        k => return Err(wrong_kind(name, k, "a module")),
    };
    let mut verdict = module_checks(&m);
    if !verdict.passed() {
        return Ok(Outcome { verdict, text: format!("module {name} is not valid\n"), data: Value::Null, workspace: ws });
    }
    let degrees: Vec<i64> = match degree {
        Some(n) => vec![n],
        None => (0..=3.min(degree_ceiling())).collect(),
    };
    let mut text = format!("H^n({name})\n degree  cochains  cocycles  coboundaries  betti\n");
    let mut rows = Vec::new();
    for n in degrees {
        let h = cohomology(&m, n)?;
        let _ = writeln!(text, " {:>6}  {:>8}  {:>8}  {:>12}  {:>5}", n, h.cochain_dim, h.cocycles, h.coboundaries, h.betti);
        let mut reps = Vec::new();
        for (i, c) in h.representatives.iter().enumerate() {
            let _ = writeln!(text, "   [{i}] {}", cochain_text(c));
            let cname = ws.put_cochain(&format!("{name}_H{n}_{i}"), &m, c);
            rewritten(&mut verdict, &cname, &(m.clone(), c.clone()), ws.cochain(&cname));
            reps.push(Value::from(cname));
        }
        rows.push(json!({
            "degree": n, "cochain_dim": h.cochain_dim, "cocycles": h.cocycles,
            "coboundaries": h.coboundaries, "betti": h.betti, "representatives": reps,
        }));
    }
    Ok(Outcome { verdict, text, data: json!({"module": name, "degrees": rows}), workspace: ws })
}

fn crossed_module(ws: &Workspace, name: &str) -> Result<CrossedModule> {
    match kind_of(ws, name)? {
        Kind::CrossedModule => ws.crossed_module(name),
        k => Err(wrong_kind(name, k, "a crossed module")),
    }
}

fn crossed_product_cmd(mut ws: Workspace, name: &str) -> Result<Outcome> {
    let cm = crossed_module(&ws, name)?;
    let prod = crossed_product(&cm.g, &cm.m, &cm.action)?;
    let mut verdict = check_lie2(&prod);
    let n = ws.put_algebra(&format!("{name}_product"), &prod);
    rewritten(&mut verdict, &n, &prod, ws.algebra(&n));
    let text = format!("crossed product written as algebras.{n} with dims {:?}\n", prod.dims());
    Ok(Outcome { verdict, text, data: json!({"algebra": n}), workspace: ws })
}

fn mapping_cone_cmd(mut ws: Workspace, name: &str) -> Result<Outcome> {
    let cm = crossed_module(&ws, name)?;
    let mut verdict = Verdict::new();
    verdict.absorb("crossed module", check_crossed_module(&cm)?);
    if !verdict.passed() {
        return Ok(Outcome { verdict, text: String::new(), data: Value::Null, workspace: ws });
    }
    let cone = mapping_cone(&cm)?;
    verdict.absorb("mapping cone", check_lie3_strict(&cone));
    let n = ws.put_lie3(&format!("{name}_cone"), &cone);
    rewritten(&mut verdict, &n, &cone, ws.lie3(&n));
    let text = format!("mapping cone written as lie3_algebras.{n} with dims {:?}\n", cone.space.dims());
    Ok(Outcome { verdict, text, data: json!({"lie3_algebra": n}), workspace: ws })
}

fn derivations_cmd(mut ws: Workspace, name: &str) -> Result<Outcome> {
    let g = match kind_of(&ws, name)? {
        Kind::Algebra => ws.algebra(name)?,
        k => return Err(wrong_kind(name, k, "an algebra")),
    };
    let (cm, der) = derivation_crossed_module(&g)?;
    let mut verdict = Verdict::new();
    verdict.absorb("Der(g)", check_lie2(&der.algebra));
    verdict.absorb("Inn₀ is an ideal", inner_ideal_residuals(&der));
    verdict.absorb("(g, Der g)", check_crossed_module(&cm)?);
    let n = ws.put_crossed_module(&format!("{name}_der"), &cm);
    rewritten(&mut verdict, &n, &cm, ws.crossed_module(&n));
    let text = format!("derivation crossed module written as crossed_modules.{n}; Der(g) has dims {:?}\n", der.algebra.dims());
    Ok(Outcome { verdict, text, data: json!({"crossed_module": n, "dims": der.algebra.dims()}), workspace: ws })
}

fn h1_cmd(mut ws: Workspace, name: &str) -> Result<Outcome> {
    let der: DerivationAlgebra = match kind_of(&ws, name)? {
        Kind::Algebra => der_of(&ws.algebra(name)?)?,
        Kind::CrossedModule => {
            let cm = ws.crossed_module(name)?;
            derivation_algebra(&cm.action.module, &cm.phi, &cm.sigma)?
        }
        k => return Err(wrong_kind(name, k, "an algebra or crossed module")),
    };
    let mut verdict = Verdict::new();
    verdict.absorb("Der", check_lie2(&der.algebra));
    verdict.absorb("", minus_d_derivation_residuals(&der));
    verdict.absorb("", inner_ideal_residuals(&der));
    let h1 = h1_lie_algebra(&der)?;
    let lie = h1.lie_algebra();
    verdict.absorb("H¹", check_lie2(&lie));
    let mut text = format!("dim H¹ = {}\n", h1.betti);
    for (i, row) in h1.bracket.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            if i < j {
                let _ = writeln!(text, "  [r{i}, r{j}] = {}", fmt_vec(b));
            }
        }
    }
    let n = ws.put_algebra(&format!("{name}_h1"), &lie);
    let data = json!({"betti": h1.betti, "algebra": n});
    Ok(Outcome { verdict, text, data, workspace: ws })
}

/// `μ` with the default sections and with shifted ones.
fn mu_both(cm: &CrossedModule, v: &mut Verdict) -> Result<crate::classify::Mu> {
    let base = mu(cm, None)?;
    let other = mu(cm, Some(&SectionPair::shifted(&base.sections, &base.sequence)))?;
    v.expect("μ is independent of the section s", base.class_id == other.class_id, || {
        format!("{} vs {}", fmt_vec(&base.class_id), fmt_vec(&other.class_id))
    });
    Ok(base)
}

fn class_text(label: &str, c: &[Rational]) -> String {
    format!("{label} = {} (dim H³(h,V) = {})\n", fmt_vec(c), c.len())
}

fn mu_cmd(mut ws: Workspace, name: &str) -> Result<Outcome> {
    let mut verdict = Verdict::new();
    let mut text = String::new();
    let mut data = json!({});
    let (cm, result) = match kind_of(&ws, name)? {
        Kind::CrossedModule => {
            let cm = ws.crossed_module(name)?;
            let m = mu_both(&cm, &mut verdict)?;
            (cm, m)
        }
        Kind::Extension => {
            let (v, k, lam) = ws.extension(name)?;
            let chk = check_lambda_condition(&v, &k, &lam)?;
            verdict.absorb("λ-condition", chk.verdict.clone());
            let cm = epsilon_lambda(&v, &k, &lam)?;
            let m = mu_both(&cm, &mut verdict)?;
            let theta = chk.theta.clone().ok_or_else(|| Error::refused("λ-condition", "θ undefined"))?;
            verdict.expect("μ(ε_λ) has coefficients in V over h = g/k", m.sequence.module == chk.h_module, || {
                "the induced h-module differs".into()
            });
            if m.sequence.module == chk.h_module {
                let s_lam = pull_back(&lam, &m.sections.s, &chk.h_module)?;
                let sum = m.theta.add(&apply_coboundary(&chk.h_module, &s_lam));
                verdict.expect("θ_μ + D^h(s*λ) = θ", sum == theta, || {
                    sum.sub(&theta).first_nonzero().unwrap_or_default()
                });
                verdict.expect("[θ_μ] = [θ]", cohomologous(&chk.h_module, &m.theta, &theta)?, || "classes differ".into());
                let t = class_coordinates(&chk.h_module, &theta)?;
                text.push_str(&class_text("[θ]", &t));
                data["theta_class"] = vec_json(&t);
            }
            (cm, m)
        }
        Kind::Gauge => {
            let gt = build_gauge(&ws, name)?;
            verdict.absorb("gauge morphism", check_morphism(&gt.source, &gt.target, &gt.morphism)?);
            verdict.absorb("elementary equivalence", elementary_equivalence_check(&gt.source, &gt.target, &gt.morphism)?);
            let src = mu_both(&gt.source, &mut verdict)?;
            let tgt = mu(&gt.target, None)?;
            verdict.expect("gauge transformation preserves μ", src.class_id == tgt.class_id, || {
                format!("{} vs {}", fmt_vec(&src.class_id), fmt_vec(&tgt.class_id))
            });
            (gt.source, src)
        }
        Kind::Splice => {
            let (seq, lam) = ws.splice(name)?;
            let cm = splice(&seq, &lam)?;
            let m = mu_both(&cm, &mut verdict)?;
            let expected = boundary_class(&seq, &lam, &mut verdict)?;
            verdict.expect("V of the spliced crossed module is the submodule", m.sequence.module == seq.sub, || {
                "modules differ".into()
            });
            verdict.expect("μ(splice) = ∂[λ]", m.class_id == expected, || {
                format!("{} vs {}", fmt_vec(&m.class_id), fmt_vec(&expected))
            });
            text.push_str(&class_text("∂[λ]", &expected));
            data["connecting_class"] = vec_json(&expected);
            (cm, m)
        }
        k => return Err(wrong_kind(name, k, "a crossed module or an extension, gauge, or splice datum")),
    };
    text.insert_str(0, &class_text("μ", &result.class_id));
    data["class_id"] = vec_json(&result.class_id);
    let hn = ws.put_module(&format!("{name}_coefficients"), &result.sequence.module);
    let tn = ws.put_cochain(&format!("{name}_theta"), &result.sequence.module, &result.theta);
    rewritten(&mut verdict, &tn, &(result.sequence.module.clone(), result.theta.clone()), ws.cochain(&tn));
    let _ = cm;
    data["module"] = Value::from(hn);
    data["theta"] = Value::from(tn);
    Ok(Outcome { verdict, text, data, workspace: ws })
}

/// `∂[λ] ∈ H³(h, V)` in the basis of `repcoh`.
fn boundary_class(seq: &ModuleSequence, lam: &Cochain, v: &mut Verdict) -> Result<QVec> {
    let conn = connecting_map(seq, lam.degree)?;
    v.absorb("connecting map", conn.verdict.clone());
    Ok(conn.matrix.mul_vec(&class_coordinates(&seq.quot, lam)?))
}

fn build_gauge(ws: &Workspace, name: &str) -> Result<crate::classify::GaugeTransformation> {
    let ((v, k, lam), a, r) = ws.gauge(name)?;
    let chk = check_lambda_condition(&v, &k, &lam)?;
    let r = match r {
        None => Cochain::zero(&chk.h_module, 2),
        Some((m, r)) => {
            if m != chk.h_module {
                return Err(Error::Shape(format!("gauge_data.{name}.r: R must be a cochain on h = g/k")));
            }
            r
        }
    };
    gauge_transform(&v, &k, &lam, &a, &r)
}

fn is_identity(h: &Lie2Hom) -> bool {
    h.source == h.target && *h == Lie2Hom::identity(&h.source)
}

fn gauge_cmd(mut ws: Workspace, name: &str) -> Result<Outcome> {
    match kind_of(&ws, name)? {
        Kind::Gauge => {}
        k => return Err(wrong_kind(name, k, "a gauge datum")),
    }
    let gt = build_gauge(&ws, name)?;
    let mut verdict = check_morphism(&gt.source, &gt.target, &gt.morphism)?;
    let ident = is_identity(&gt.morphism.f) && is_identity(&gt.morphism.g) && gt.morphism.tau.iter().all(|t| t.is_zero());
    let n = ws.put_morphism(&format!("{name}_morphism"), &gt.source, &gt.target, &gt.morphism);
    let read = ws.morphism(&n);
    let ok = matches!(&read, Ok((a, b, m)) if *a == gt.source && *b == gt.target && *m == gt.morphism);
    verdict.expect(format!("written entity {n} reads back unchanged"), ok, || "values differ".into());
    let text = format!("gauge morphism written as crossed_module_morphisms.{n}; identity: {}\n", if ident { "yes" } else { "no" });
    Ok(Outcome { verdict, text, data: json!({"morphism": n, "identity": ident}), workspace: ws })
}

fn splice_cmd(mut ws: Workspace, name: &str) -> Result<Outcome> {
    match kind_of(&ws, name)? {
        Kind::Splice => {}
        k => return Err(wrong_kind(name, k, "a splice datum")),
    }
    let (seq, lam) = ws.splice(name)?;
    let cm = splice(&seq, &lam)?;
    let mut verdict = check_crossed_module(&cm)?;
    let n = ws.put_crossed_module(&format!("{name}_crossed_module"), &cm);
    rewritten(&mut verdict, &n, &cm, ws.crossed_module(&n));
    let text = format!("spliced crossed module written as crossed_modules.{n}\n");
    Ok(Outcome { verdict, text, data: json!({"crossed_module": n}), workspace: ws })
}

fn connecting_cmd(mut ws: Workspace, name: &str, n: i64) -> Result<Outcome> {
    let (seq, lam) = match kind_of(&ws, name)? {
        Kind::Sequence => (ws.sequence(name)?, None),
        Kind::Splice => {
            let (s, l) = ws.splice(name)?;
            (s, Some(l))
        }
        k => return Err(wrong_kind(name, k, "a sequence or splice datum")),
    };
    let n = lam.as_ref().map_or(n, |l| l.degree);
    let conn = connecting_map(&seq, n)?;
    let mut verdict = conn.verdict.clone();
    let mut text = format!("∂ : H^{n}(h,Q) → H^{}(h,V)\n", n + 1);
    let rows: Vec<Value> = (0..conn.matrix.rows()).map(|i| vec_json(conn.matrix.row(i))).collect();
    for i in 0..conn.matrix.rows() {
        let _ = writeln!(text, "  {}", fmt_vec(conn.matrix.row(i)));
    }
    let mut data = json!({"degree": n, "matrix": rows});
    if let Some(lam) = lam {
        let cls = conn.matrix.mul_vec(&class_coordinates(&seq.quot, &lam)?);
        text.push_str(&class_text("∂[λ]", &cls));
        let cm = splice(&seq, &lam)?;
        let m = mu(&cm, None)?;
        verdict.expect("μ(splice) = ∂[λ]", m.class_id == cls, || {
            format!("{} vs {}", fmt_vec(&m.class_id), fmt_vec(&cls))
        });
        let c = crate::classify::connecting_cochain(&seq, &lam)?;
        let cn = ws.put_cochain(&format!("{name}_boundary"), &seq.sub, &c);
        data["class"] = vec_json(&cls);
        data["cochain"] = Value::from(cn);
    }
    Ok(Outcome { verdict, text, data, workspace: ws })
}
