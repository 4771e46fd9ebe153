//! Energy increment: grow a QM system until every residual has QM norm at most delta.
//!
//! cargo run --release --example kvn

use monoquad::audit::{kvn_fixture, AuditConstants};
use monoquad::regularity::kvn_energy_increment;

fn main() -> monoquad::Result<()> {
    let (fs, psi0, delta, res) = kvn_fixture();
    let (psi, rep) = kvn_energy_increment(&fs, &psi0, delta, res, &AuditConstants::default())?;
    println!("p = {}, delta = {delta}, R = {res}", psi.p());
    println!("steps {} of budget {}, final dimension {}", rep.iterations, rep.budget, psi.d());
    for (j, e) in rep.energies.iter().enumerate() {
        println!("  E_{j} = {e:.6}");
    }
    println!("witnesses {:?}", rep.witnesses);
    println!("residual QM norms {:?}", rep.residual_qm);
    Ok(())
}
