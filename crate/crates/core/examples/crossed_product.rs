//! Builds g ⋉ h for an ideal h of strict aff1 and splits it back.

use lie2kit::crossmod::{crossed_product, ideal_crossed_module, split_crossed_product};
use lie2kit::fixtures::strict_aff1;
use lie2kit::lie2core::{check_lie2, GradedSubspace};
use lie2kit::ratlin::unit_vec;

fn main() -> lie2kit::Result<()> {
    let g = strict_aff1();
    let h = GradedSubspace::span(2, &[unit_vec(2, 1)], 1, &[unit_vec(1, 0)]);
    let c = ideal_crossed_module(&g, &h)?;
    let p = crossed_product(&c.g, &c.m, &c.action)?;
    println!("product dims {:?}", p.dims());
    println!("{}", check_lie2(&p));

    let (t0, t1) = p.dims();
    let (n0, n1) = g.dims();
    let u0: Vec<_> = (0..t0).map(|i| unit_vec(t0, i)).collect();
    let u1: Vec<_> = (0..t1).map(|i| unit_vec(t1, i)).collect();
    let s = split_crossed_product(&p, (&u0[..n0], &u1[..n1]), (&u0[n0..], &u1[n1..]))?;
    println!("round trip recovers the action: {}", s.action == c.action);
    Ok(())
}
