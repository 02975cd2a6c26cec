//! A gauge transformation of the shift extension preserves the class of μ.

use lie2kit::classify::{check_lambda_condition, gauge_transform, mu};
use lie2kit::crossmod::check_morphism;
use lie2kit::fixtures::shift_extension;
use lie2kit::ratlin::{format_vec, q};
use lie2kit::repcoh::{cochain_space, Cochain};

fn main() -> lie2kit::Result<()> {
    let (v, k, lam) = shift_extension();
    let h = check_lambda_condition(&v, &k, &lam)?.h_module;
    let ones = |m, n| {
        let flat: Vec<_> = (0..cochain_space(m, n).total).map(|i| q(i as i64 % 3 - 1)).collect();
        Cochain::from_flat(m, n, &flat)
    };
    let gt = gauge_transform(&v, &k, &lam, &ones(&v, 1)?, &ones(&h, 2)?)?;
    println!("{}", check_morphism(&gt.source, &gt.target, &gt.morphism)?);
    println!("source class {}", format_vec(&mu(&gt.source, None)?.class_id));
    println!("target class {}", format_vec(&mu(&gt.target, None)?.class_id));
    Ok(())
}
