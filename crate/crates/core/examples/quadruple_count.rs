//! T(f1, f2, f3, f4) on the quadratic-times-multiplicative example, whose
//! value is ((p-1)^2 + 1)/p^2 although three of the four functions have small u2 norms.
//!
//! cargo run --example quadruple_count

use monoquad::counting::{quadratic_multiplicative_example, quadratic_multiplicative_value, t_op};
use monoquad::harmonic::norm_u2_plus;
use monoquad::FieldCtx;

fn main() -> monoquad::Result<()> {
    for p in [13u64, 17, 31, 61] {
        let ctx = FieldCtx::new(p)?;
        let [f1, f2, f3, f4] = quadratic_multiplicative_example(&ctx);
        let t = t_op(&f1, &f2, &f3, &f4)?;
        let u2 = [&f1, &f2, &f3, &f4].map(|f| norm_u2_plus(f).value);
        println!(
            "p = {p:>3}  T = {:.12}  expected {:.12}  u2+ norms {:.3?}",
            t.re,
            quadratic_multiplicative_value(p),
            u2
        );
    }
    Ok(())
}
