//! Dependent random choice on weighted bipartite graphs, in exact arithmetic.
//!
//! cargo run --example drc

use monoquad::ramsey::dependent_random_choice;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};

fn main() -> monoquad::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    for n in [4usize, 8, 12] {
        let a: Vec<Vec<bool>> = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(0.4)).collect()).collect();
        let wx: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let wy = vec![1u64; n];
        let eta = BigRational::new(BigInt::from(1), BigInt::from(4));
        let d = dependent_random_choice(&wx, &wy, &a, &eta)?;
        println!(
            "n = {n:>2}: alpha {}, y* = {}, X' = {:?}, nu(X') = {}, bad pair mass {}",
            d.alpha, d.y_star, d.x_prime, d.measure, d.e_measure
        );
    }
    Ok(())
}
