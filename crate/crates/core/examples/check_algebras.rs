//! Checks the built-in Lie 2-algebras and prints each verdict.

use lie2kit::fixtures::*;
use lie2kit::lie2core::check_lie2;

fn main() {
    for (name, g) in [("aff1", aff1()), ("sl2", sl2()), ("skeletal_sl2", skeletal_sl2()), ("strict_aff1", strict_aff1())] {
        println!("{name}: dims {:?}", g.dims());
        println!("{}", check_lie2(&g));
    }
}
