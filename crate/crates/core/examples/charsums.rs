//! Gauss sums, shifted character products and the mixed-sum sweep written to CSV.
//!
//! cargo run --release --example charsums [out.csv]

use monoquad::audit::AuditConstants;
use monoquad::charsums::{gauss_sum, mixed_sum_sweep, u3_box_sum, weil_product_sum, write_sweep_csv};
use monoquad::{FieldCtx, MultChar};
use rand::SeedableRng;

fn main() -> monoquad::Result<()> {
    let audit = AuditConstants::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    for p in [31u64, 61, 101] {
        let ctx = FieldCtx::new(p)?;
        let g = gauss_sum(&ctx, 1, 0)?;
        let (s, bound) = weil_product_sum(&ctx, &[MultChar { k: 1 }, MultChar { k: 2 }, MultChar { k: 3 }], &[0, 1, 5])?;
        let rows = mixed_sum_sweep(&ctx, 100, audit.mixed_sum_c, &mut rng)?;
        let mean = rows.iter().map(|r| r.magnitude).sum::<f64>() / rows.len() as f64;
        println!("p = {p:>3}: |G| - sqrt p = {:+.1e}, |product sum| {:.3} <= {bound:.3}, mixed mean {mean:.4}", g.norm() - (p as f64).sqrt(), s.norm());
        if let Some(path) = std::env::args().nth(1).filter(|_| p == 101) {
            write_sweep_csv(&rows, path.as_ref())?;
            println!("sweep written to {path}");
        }
    }
    let ctx = FieldCtx::new(13)?;
    let b = u3_box_sum(&ctx, MultChar { k: 6 }, MultChar { k: 0 }, 1)?;
    println!("box sum at p = 13: {:.5} (shifted-product bound {:.5}, {} degenerate triples)", b.value, b.weil_bound, b.degenerate);
    Ok(())
}
