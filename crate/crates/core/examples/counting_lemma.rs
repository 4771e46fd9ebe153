//! Counting lemma on S = B(Psi, eps): |T - mu(S) I(F)| against its error budget.
//!
//! cargo run --release --example counting_lemma

use monoquad::audit::AuditConstants;
use monoquad::qm::{counting_integral_enum, counting_integral_i, counting_lemma_check, QMSystem, TrigPoly};
use monoquad::FieldCtx;
use num_rational::Rational64;
use rand::SeedableRng;

fn main() -> monoquad::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
    let c = AuditConstants::default().counting_c;
    let eps = Rational64::new(3, 10);

    let small = QMSystem::new(&FieldCtx::new(7)?, &[(3, 2)]);
    let f = TrigPoly::random(&mut rng, 1, 4, 2, 2.0);
    println!("I(F) at p = 7: dual {:.12}, enumerated {:.12}", counting_integral_i(&small, &f)?, counting_integral_enum(&small, &f)?);

    for p in [31u64, 61, 101] {
        let psi = QMSystem::new(&FieldCtx::new(p)?, &[(2, 3)]);
        let f = TrigPoly::random(&mut rng, 1, 4, 1, 1.5);
        let rep = counting_lemma_check(&psi, &f, &psi.bohr_set(eps), eps)?;
        let budget = rep.budget(c);
        println!("p = {p:>3}: margin {:.3e}, budget {:.3e}, mu(S) = {:.4}", rep.margin, budget.rhs, rep.mu_s);
    }
    Ok(())
}
