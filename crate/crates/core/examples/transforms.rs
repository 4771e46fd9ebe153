//! Additive and multiplicative Fourier transforms, inversion and Parseval.
//!
//! cargo run --example transforms

use monoquad::harmonic::{add_invert, add_transform, convolve, mult_spectrum};
use monoquad::{FieldCtx, Signal};
use rand::SeedableRng;

fn main() -> monoquad::Result<()> {
    let ctx = FieldCtx::new(13)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let (f, g) = (Signal::random(&ctx, &mut rng), Signal::random(&ctx, &mut rng));

    let spectrum = add_transform(&f);
    let energy: f64 = spectrum.coeffs.iter().map(|z| z.norm_sqr()).sum();
    println!("inversion error    {:.2e}", add_invert(&spectrum).max_abs_diff(&f));
    println!("Parseval           {energy:.12} vs {:.12}", f.l2_sq());

    let (a, b, c) = (add_transform(&f), add_transform(&g), add_transform(&convolve(&f, &g)?));
    let err = (0..13).map(|r| (c.coeffs[r] - a.coeffs[r] * b.coeffs[r]).norm()).fold(0.0, f64::max);
    println!("convolution error  {err:.2e}");

    let m = mult_spectrum(&f);
    for (k, z) in m.coeffs.iter().enumerate().take(4) {
        println!("mult coefficient {k}: {:.6} {:+.6}i", z.re, z.im);
    }
    Ok(())
}
