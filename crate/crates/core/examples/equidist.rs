//! Baby counting lemma: the orbit average of F(Psi(x)) against the lattice sum of its coefficients.
//!
//! cargo run --example equidist

use monoquad::qm::{baby_count, Mode, QMSystem, TrigPoly};
use monoquad::{FieldCtx, C64};
use rand::SeedableRng;

fn main() -> monoquad::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for (p, dims) in [(7u64, vec![(1u64, 1u64)]), (11, vec![(2, 5)]), (5, vec![(1, 2), (3, 1)])] {
        let ctx = FieldCtx::new(p)?;
        let psi = QMSystem::new(&ctx, &dims);
        let mut f = TrigPoly::random(&mut rng, psi.d(), 6, 3, 2.0);
        // the zero mode lies on every lattice, so the lattice sum picks it up
        f.add_term(Mode::zero(psi.d()), C64::new(0.5, 0.0));
        let b = baby_count(&psi, &f);
        println!(
            "p = {p:>2} d = {}: E F(Psi) = {:.10}, lattice sum = {:.10}, H average = {:?}",
            psi.d(),
            b.lhs,
            b.rhs_lattice,
            b.rhs_enum.map(|z| format!("{z:.10}"))
        );
    }
    Ok(())
}
