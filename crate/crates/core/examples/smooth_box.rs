//! Smooth trigonometric majorants of the atoms of a QM partition.
//!
//! cargo run --release --example smooth_box

use monoquad::qm::QMSystem;
use monoquad::regularity::{build_atoms, check_sqrt2_gap, project, smooth_box_approx};
use monoquad::{FieldCtx, Signal};

fn main() -> monoquad::Result<()> {
    let ctx = FieldCtx::new(31)?;
    let psi = QMSystem::new(&ctx, &[(3, 4)]);
    let atoms = build_atoms(&psi, 2)?;
    println!("{} atoms at resolution 2", atoms.len());
    for (key, xs) in atoms.keys.iter().zip(&atoms.members) {
        let sb = smooth_box_approx(1, 2, key, 0.5)?;
        let grid = sb.verify_grid(10);
        let orbit = sb.verify_orbit(&psi);
        let pind = project(&atoms, &Signal::indicator_of(&ctx, xs))?;
        println!(
            "atom {key:?}: {} points, degree {}, trig norm {:.3}, grid violations {}, orbit violations {}, mass {:.4}",
            xs.len(),
            sb.degree,
            sb.trig_norm(),
            grid.violations,
            orbit.violations,
            pind.l1()
        );
    }
    let gap = check_sqrt2_gap(1_000_000)?;
    println!("m ||m sqrt2|| >= 1/3 up to 10^6: {} violations, minimum {:.6} at m = {}", gap.violations.len(), gap.min_scaled, gap.argmin);
    Ok(())
}
