//! Betti numbers of a few classical modules in degrees 0..=3.

use lie2kit::fixtures::{aff1, heis, plain_space, sl2};
use lie2kit::repcoh::{adjoint_module, cohomology, Lie2Module};

fn main() -> lie2kit::Result<()> {
    let modules = [
        ("sl2, trivial", Lie2Module::trivial(sl2(), plain_space(1, 0))),
        ("sl2, adjoint", adjoint_module(&sl2())),
        ("aff1, trivial", Lie2Module::trivial(aff1(), plain_space(1, 0))),
        ("heis, trivial", Lie2Module::trivial(heis(), plain_space(1, 0))),
    ];
    for (name, m) in &modules {
        let betti: Vec<usize> = (0..=3).map(|n| cohomology(m, n).map(|h| h.betti)).collect::<Result<_, _>>()?;
        println!("{name:14} {betti:?}");
    }
    Ok(())
}
