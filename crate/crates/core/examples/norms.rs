//! Gowers-type and quadratic-multiplicative norms of a few standard signals.
//!
//! cargo run --example norms

use monoquad::harmonic::{norm_qm, norm_u2_plus, norm_u2_times, norm_u3_plus};
use monoquad::{FieldCtx, MultChar, QuadPhase, Signal};
use rand::SeedableRng;

fn main() -> monoquad::Result<()> {
    let ctx = FieldCtx::new(31)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let signals = [
        ("quadratic phase", Signal::quad_phase(&ctx, QuadPhase { r: 3, s: 1 })),
        ("legendre symbol", Signal::mult_char(&ctx, MultChar { k: 15 })),
        ("phase times character", Signal::quad_phase(&ctx, QuadPhase { r: 1, s: 0 }).mul(&Signal::mult_char(&ctx, MultChar { k: 1 }))?),
        ("random unimodular", Signal::random_unimodular(&ctx, &mut rng)),
    ];
    println!("{:<24}{:>10}{:>10}{:>10}{:>10}", "p = 31", "u2+", "u2x", "u3+", "QM");
    for (name, f) in &signals {
        println!(
            "{name:<24}{:>10.4}{:>10.4}{:>10.4}{:>10.4}",
            norm_u2_plus(f).value,
            norm_u2_times(f).value,
            norm_u3_plus(f).value,
            norm_qm(f).value
        );
    }
    Ok(())
}
