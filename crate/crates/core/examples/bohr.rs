//! Bohr set densities and box measures in exact rational arithmetic.
//!
//! cargo run --release --example bohr

use monoquad::qm::{box_measure, check_bohr_density, HGroup, QMSystem};
use monoquad::FieldCtx;
use num_rational::Rational64;

fn main() -> monoquad::Result<()> {
    let ctx = FieldCtx::new(101)?;
    for dims in [vec![(1u64, 1u64)], vec![(7, 3)], vec![(1, 1), (5, 2)]] {
        let psi = QMSystem::new(&ctx, &dims);
        let h = HGroup::of(&psi);
        for eps in [Rational64::new(1, 4), Rational64::new(1, 2)] {
            let bohr = check_bohr_density(&psi, eps, 0)?;
            let boxed = box_measure(&h, eps);
            println!(
                "dims {dims:?} eps {eps}: mu(B) = {} (floor {}), box measure {boxed} (floor {}), |H| = {}",
                bohr.density,
                bohr.floor,
                eps.pow(3 * psi.d() as i32),
                h.order()
            );
        }
    }
    Ok(())
}
