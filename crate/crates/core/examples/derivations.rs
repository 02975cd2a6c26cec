//! Der(g) and H¹(g, g) for aff1 and skeletal sl2.

use lie2kit::crossmod::{der_of, h1_lie_algebra, inner_ideal_residuals};
use lie2kit::fixtures::{aff1, skeletal_sl2};
use lie2kit::lie2core::check_lie2;

fn main() -> lie2kit::Result<()> {
    for (name, g) in [("aff1", aff1()), ("skeletal_sl2", skeletal_sl2())] {
        let der = der_of(&g)?;
        println!("{name}: Der dims {:?}", der.algebra.dims());
        println!("{}", check_lie2(&der.algebra));
        println!("{}", inner_ideal_residuals(&der));
        let h1 = h1_lie_algebra(&der)?;
        println!("H¹ has dimension {} (Inn₀ has {})", h1.betti, h1.inner.len());
    }
    Ok(())
}
