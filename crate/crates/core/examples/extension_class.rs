//! Classifies the Heisenberg extension: ε_λ, its μ class, and the round trip to θ.

use lie2kit::classify::{check_lambda_condition, epsilon_lambda, mu, pull_back};
use lie2kit::fixtures::heis_extension;
use lie2kit::ratlin::format_vec;
use lie2kit::repcoh::{apply_coboundary, cohomologous};

fn main() -> lie2kit::Result<()> {
    let (v, k, lam) = heis_extension();
    let chk = check_lambda_condition(&v, &k, &lam)?;
    println!("{}", chk.verdict);
    let theta = chk.theta.expect("λ condition holds");

    let c = epsilon_lambda(&v, &k, &lam)?;
    let m = mu(&c, None)?;
    println!("class id {}", format_vec(&m.class_id));

    let s_lam = pull_back(&lam, &m.sections.s, &chk.h_module)?;
    let sum = m.theta.add(&apply_coboundary(&chk.h_module, &s_lam));
    println!("θ_μ + D(s*λ) = θ: {}", sum == theta);
    println!("same class: {}", cohomologous(&chk.h_module, &m.theta, &theta)?);
    Ok(())
}
