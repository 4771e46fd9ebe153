//! Fewest monochromatic pairs over all 2-colourings of F_p, and a random sample for larger p.
//!
//! cargo run --release --example scan

use monoquad::search::{fp_coloring_scan, ScanMode};
use rand::SeedableRng;

fn main() -> monoquad::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for p in [5u64, 7, 11, 13] {
        let rep = fp_coloring_scan(p, 2, ScanMode::Exhaustive, &mut rng)?;
        println!("p = {p:>2}  exhaustive over {:>5}: min {:>3}, mean {:.3}, argmin {:?}", rep.scanned, rep.min, rep.mean, rep.argmin);
    }
    let rep = fp_coloring_scan(101, 3, ScanMode::Random(500), &mut rng)?;
    println!("p = 101, r = 3, 500 random colourings: min {}, mean {:.1}", rep.min, rep.mean);
    Ok(())
}
