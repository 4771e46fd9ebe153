//! Quadratic decomposition f = sum lambda_phi phi + g and the quantities it controls.
//!
//! cargo run --release --example decompose

use monoquad::regularity::quad_decompose_unchecked;
use monoquad::{FieldCtx, Signal};
use rand::SeedableRng;

fn main() -> monoquad::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for p in [61u64, 101] {
        let ctx = FieldCtx::new(p)?;
        let f = Signal::random_unit_l2(&ctx, &mut rng);
        for eps in [0.4, 0.6] {
            let dec = quad_decompose_unchecked(&f, eps)?;
            println!("p = {p}, eps = {eps}: {} phases, lemma range needs eps >= {:.3}", dec.terms.len(), 4.0 * (p as f64).powf(-0.125));
            for m in dec.conclusions().iter().chain(&dec.proof_inequalities()) {
                println!("  {:<40} {:>10.5} <= {:<10.5} {}", m.name, m.lhs, m.rhs, if m.holds(1e-12) { "" } else { "fails" });
            }
        }
    }
    Ok(())
}
