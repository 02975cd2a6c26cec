//! Splicing the Cartan cocycle into the sl2 sequence; μ equals the connecting map.

use lie2kit::classify::{connecting_map, mu, splice};
use lie2kit::fixtures::{cartan_cocycle, sl2_sequence};
use lie2kit::ratlin::format_vec;
use lie2kit::repcoh::class_coordinates;

fn main() -> lie2kit::Result<()> {
    let seq = sl2_sequence();
    let lam = cartan_cocycle(&seq.quot);
    let conn = connecting_map(&seq, lam.degree)?;
    let expected = conn.matrix.mul_vec(&class_coordinates(&seq.quot, &lam)?);
    let c = splice(&seq, &lam)?;
    let got = mu(&c, None)?.class_id;
    println!("μ {}, ∂[λ] {}, equal: {}", format_vec(&got), format_vec(&expected), got == expected);
    Ok(())
}
