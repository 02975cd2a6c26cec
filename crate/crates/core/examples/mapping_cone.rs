//! The mapping cone of g → Der(g) for skeletal sl2, checked as a Lie 3-algebra.

use lie2kit::crossmod::{check_crossed_module, derivation_crossed_module, mapping_cone};
use lie2kit::fixtures::skeletal_sl2;
use lie2kit::lie2core::check_lie3_strict;

fn main() -> lie2kit::Result<()> {
    let (c, _) = derivation_crossed_module(&skeletal_sl2())?;
    println!("{}", check_crossed_module(&c)?);
    let cone = mapping_cone(&c)?;
    println!("cone dims {:?}", cone.space.dims());
    println!("{}", check_lie3_strict(&cone));
    Ok(())
}
