//! Regenerates the workspace files in `fixtures/`.
//!
//! ```text
//! cargo run --example build_fixtures -- [OUTPUT_DIR]
//! ```

use std::path::PathBuf;

use lie2kit::classify::check_lambda_condition;
use lie2kit::crossmod::{derivation_crossed_module, ideal_crossed_module, CrossedModule, DerivAction};
use lie2kit::fixtures::*;
use lie2kit::graded::{GradedMap, MultiTensor, Target};
use lie2kit::lie2core::{GradedSubspace, Lie2Algebra};
use lie2kit::ratlin::{q, unit_vec, Rational};
use lie2kit::repcoh::{adjoint_module, cochain_space, Cochain, Lie2Module};
use lie2kit::workspace::{GaugeJson, Workspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cochain(m: &Lie2Module, n: i64, seed: u64) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flat: Vec<Rational> = (0..cochain_space(m, n).total).map(|_| q(rng.gen_range(-2..=2))).collect();
    Cochain::from_flat(m, n, &flat).expect("flat length")
}

fn abelian_ws() -> Workspace {
    let mut ws = Workspace::default();
    let g = abelian(2, 1);
    ws.put_algebra("abelian", &g);
    ws.put_module("abelian_trivial", &Lie2Module::trivial(g.clone(), plain_space(1, 1)));
    let m = abelian(1, 1);
    let cm = CrossedModule {
        action: DerivAction::trivial(&g, &m),
        phi: GradedMap::zero((1, 1), (2, 1)),
        phi2: MultiTensor::zero(2, 0, 1, 1, Target::V1, 1),
        sigma: vec![lie2kit::ratlin::RationalMatrix::zeros(1, 1); 2],
        m,
        g,
    };
    ws.put_crossed_module("abelian_zero_map", &cm);
    ws
}

fn aff1_ws() -> Workspace {
    let mut ws = Workspace::default();
    let g = aff1();
    ws.put_algebra("aff1", &g);
    ws.put_module("aff1_trivial", &Lie2Module::trivial(g.clone(), plain_space(1, 0)));
    ws.put_module("aff1_adjoint", &adjoint_module(&g));
    ws.put_ideal("aff1_derived", &g, &GradedSubspace::span(2, &[unit_vec(2, 1)], 0, &[]));
    ws.put_algebra("strict_aff1", &strict_aff1());
    ws.put_module("strict_aff1_adjoint", &adjoint_module(&strict_aff1()));
    ws
}

fn sl2_ws() -> Workspace {
    let mut ws = Workspace::default();
    let g = sl2();
    ws.put_algebra("sl2", &g);
    ws.put_module("sl2_trivial", &Lie2Module::trivial(g.clone(), plain_space(1, 0)));
    ws.put_module("sl2_adjoint", &adjoint_module(&g));
    ws.put_algebra("skeletal_sl2", &skeletal_sl2());
    ws.put_module("skeletal_sl2_trivial", &Lie2Module::trivial(skeletal_sl2(), plain_space(1, 1)));
    let (v, k, lam) = sl2z_extension();
    ws.put_algebra("sl2_plus_line", &v.algebra);
    ws.put_module("sl2_plus_line_trivial", &v);
    ws.put_ideal("sl2_plus_line_center", &v.algebra, &k);
    ws.put_cochain("sl2_plus_line_lambda", &v, &lam);
    let ext = ws.put_extension("sl2_plus_line_extension", &v, &k, &lam);
    let a = ws.put_cochain("sl2_plus_line_gauge_a", &v, &random_cochain(&v, 1, 3));
    let h_module = check_lambda_condition(&v, &k, &lam).expect("λ-condition").h_module;
    ws.put_module("sl2_trivial_v11", &h_module);
    let r = ws.put_cochain("sl2_plus_line_gauge_r", &h_module, &random_cochain(&h_module, 2, 103));
    ws.gauge_data.insert("sl2_plus_line_gauge".into(), GaugeJson { extension: ext, a: Some(a), r: Some(r) });
    ws
}

fn heis_ws() -> Workspace {
    let mut ws = Workspace::default();
    let (v, k, lam) = heis_extension();
    ws.put_algebra("heis", &v.algebra);
    ws.put_space("v11", &v.space);
    ws.put_module("heis_trivial", &v);
    ws.put_ideal("heis_center_plus", &v.algebra, &k);
    ws.put_cochain("heis_lambda", &v, &lam);
    let ext = ws.put_extension("heis_extension", &v, &k, &lam);
    let (sv, sk, slam) = shift_extension();
    ws.put_algebra("line_identity", &sv.algebra);
    ws.put_module("line_identity_shifted", &sv);
    ws.put_extension("shift_extension", &sv, &sk, &slam);
    ws.gauge_data.insert("heis_gauge_identity".into(), GaugeJson { extension: ext.clone(), a: None, r: None });
    let a = ws.put_cochain("heis_gauge_a", &v, &random_cochain(&v, 1, 7));
    ws.gauge_data.insert("heis_gauge".into(), GaugeJson { extension: ext, a: Some(a), r: None });
    let (sv, sk, slam) = shift_extension();
    let h_module = check_lambda_condition(&sv, &sk, &slam).expect("λ-condition").h_module;
    let sa = ws.put_cochain("shift_gauge_a", &sv, &random_cochain(&sv, 1, 11));
    ws.put_module("shift_quotient_module", &h_module);
    let sr = ws.put_cochain("shift_gauge_r", &h_module, &random_cochain(&h_module, 2, 111));
    ws.gauge_data.insert("shift_gauge".into(), GaugeJson { extension: "shift_extension".into(), a: Some(sa), r: Some(sr) });
    ws
}

fn splice_ws() -> Workspace {
    let mut ws = Workspace::default();
    let seq = sl2_sequence();
    ws.put_algebra("sl2", &seq.sub.algebra);
    ws.put_module("sl2_v", &seq.sub);
    ws.put_module("sl2_i", &seq.mid);
    ws.put_module("sl2_q", &seq.quot);
    ws.put_sequence("sl2_sequence", &seq);
    ws.put_splice("sl2_cartan_splice", &seq, &cartan_cocycle(&seq.quot));
    let aff = aff1_sequence();
    ws.put_algebra("aff1", &aff.sub.algebra);
    ws.put_module("aff1_v", &aff.sub);
    ws.put_module("aff1_i", &aff.mid);
    ws.put_module("aff1_q", &aff.quot);
    ws.put_sequence("aff1_sequence", &aff);
    ws.put_splice("aff1_zero_splice", &aff, &Cochain::zero(&aff.quot, 2));
    ws
}

fn derivation_ws() -> Workspace {
    let mut ws = Workspace::default();
    for (name, g) in [("strict_aff1", strict_aff1()), ("skeletal_aff1", skeletal_aff1()), ("skeletal_sl2", skeletal_sl2())] {
        let (cm, _) = derivation_crossed_module(&g).expect("derivation crossed module");
        ws.put_algebra(name, &g);
        ws.put_crossed_module(&format!("{name}_der"), &cm);
    }
    ws
}

fn ideal_ws() -> Workspace {
    let mut ws = Workspace::default();
    let cases: Vec<(&str, Lie2Algebra, GradedSubspace)> = vec![
        ("aff1", aff1(), GradedSubspace::span(2, &[unit_vec(2, 1)], 0, &[])),
        ("strict_aff1", strict_aff1(), GradedSubspace::span(2, &[unit_vec(2, 1)], 1, &[unit_vec(1, 0)])),
        ("skeletal_sl2", skeletal_sl2(), GradedSubspace::span(3, &[], 1, &[unit_vec(1, 0)])),
    ];
    for (name, g, h) in cases {
        let cm = ideal_crossed_module(&g, &h).expect("ideal crossed module");
        ws.put_algebra(name, &g);
        ws.put_ideal(&format!("{name}_ideal"), &g, &h);
        ws.put_crossed_module(&format!("{name}_ideal_cm"), &cm);
    }
    ws
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    std::fs::create_dir_all(&dir).expect("output directory");
    let files = [
        ("abelian", abelian_ws()),
        ("aff1", aff1_ws()),
        ("sl2", sl2_ws()),
        ("heis", heis_ws()),
        ("splice", splice_ws()),
        ("derivation_crossed_module", derivation_ws()),
        ("ideal_crossed_module", ideal_ws()),
    ];
    for (name, ws) in files {
        let path = dir.join(format!("{name}.json"));
        ws.save(&path).expect("write fixture");
        println!("wrote {}", path.display());
    }
}
