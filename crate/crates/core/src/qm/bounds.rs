//! Exact measure bounds: pigeonhole projections, boxes in H, Bohr set density.

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{HGroup, QMSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PigeonReport {
    pub measure: Rational64,
    pub bound: Rational64,
    pub holds: bool,
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

fn circle_norm(x: Rational64) -> Rational64 {
    let f = frac(x);
    f.min(Rational64::one() - f)
}

/// mu_G{x : |pi(x)| <= delta} for G = Z_{n_1} x .. x Z_{n_m} and pi given by the
/// images of the standard generators in (R/Z)^d. Errors if pi is not
/// well defined (n_j pi(e_j) must vanish) or G is too large to enumerate.
pub fn check_pigeon_projection(factors: &[u64], images: &[Vec<Rational64>], delta: Rational64) -> Result<PigeonReport> {
    if factors.len() != images.len() {
        return Err(Error::Invalid("one image per cyclic factor".into()));
    }
    let d = images.first().map_or(0, |v| v.len());
    if images.iter().any(|v| v.len() != d) {
        return Err(Error::Invalid("images must share the target dimension".into()));
    }
    for (n, img) in factors.iter().zip(images) {
        if img.iter().any(|&q| !frac(q * Rational64::from_integer(*n as i64)).is_zero()) {
            return Err(Error::Invalid(format!("image of a generator of Z_{n} has order not dividing {n}")));
        }
    }
    let order: u64 = factors.iter().product();
    if order > 10_000_000 {
        return Err(Error::Budget(format!("|G| = {order} too large to enumerate")));
    }
    let mut count = 0i64;
    let mut x = vec![0u64; factors.len()];
    for _ in 0..order {
        let ok = (0..d).all(|i| {
            let s: Rational64 =
                x.iter().zip(images).map(|(&xj, img)| img[i] * Rational64::from_integer(xj as i64)).sum();
            circle_norm(s) <= delta
        });
        count += ok as i64;
        for (j, n) in factors.iter().enumerate() {
            x[j] += 1;
            if x[j] < *n {
                break;
            }
            x[j] = 0;
        }
    }
    let measure = Rational64::new(count, order as i64);
    let bound = delta.pow(d as i32);
    Ok(PigeonReport { measure, bound, holds: measure >= bound })
}

/// mu_H(X(eps)), exactly.
pub fn box_measure(h: &HGroup, eps: Rational64) -> Rational64 {
    let inside = h.elements().filter(|g| g.within(eps)).count();
    Rational64::new(inside as i64, h.order() as i64)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BohrDensityReport {
    pub density: Rational64,
    /// (1/8)(eps/4)^{3d}
    pub floor: Rational64,
    pub asserted: bool,
}

/// Density of B(Psi, eps) against (1/8)(eps/4)^{3d}. The comparison is only
/// enforced for p >= `threshold`; below it the numbers are just reported.
pub fn check_bohr_density(psi: &QMSystem, eps: Rational64, threshold: u64) -> Result<BohrDensityReport> {
    let p = psi.p();
    let density = Rational64::new(psi.bohr_set(eps).len() as i64, p as i64);
    let floor = Rational64::new(1, 8) * (eps / Rational64::from_integer(4)).pow(3 * psi.d() as i32);
    let asserted = p >= threshold;
    if asserted && density < floor {
        return Err(Error::BoundViolated(format!("Bohr density {density} below {floor} at p = {p}")));
    }
    Ok(BohrDensityReport { density, floor, asserted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn pigeon_examples() {
        let r = check_pigeon_projection(&[10], &[vec![Rational64::new(1, 10)]], Rational64::new(1, 4)).unwrap();
        assert_eq!(r.measure, Rational64::new(1, 2));
        assert!(r.holds);
        let r = check_pigeon_projection(&[6, 4], &[vec![Rational64::zero()], vec![Rational64::zero()]], Rational64::new(1, 8))
            .unwrap();
        assert_eq!(r.measure, Rational64::one());
        assert!(check_pigeon_projection(&[10], &[vec![Rational64::new(1, 3)]], Rational64::new(1, 4)).is_err());
        for p in [5i64, 7, 11] {
            for a in 1..p {
                let r = check_pigeon_projection(&[p as u64], &[vec![Rational64::new(a, p)]], Rational64::new(1, 5)).unwrap();
                assert!(r.holds);
            }
        }
    }

    #[test]
    fn boxes_and_bohr_sets() {
        for (p, dims) in [(5u64, vec![(1u64, 1u64)]), (11, vec![(2, 3)]), (13, vec![(1, 4), (2, 6)])] {
            let ctx = FieldCtx::new(p).unwrap();
            let psi = QMSystem::new(&ctx, &dims);
            let h = HGroup::of(&psi);
            for eps in [Rational64::new(1, 4), Rational64::new(1, 2)] {
                assert!(box_measure(&h, eps) >= eps.pow(3 * dims.len() as i32));
            }
        }
        let ctx = FieldCtx::new(101).unwrap();
        let psi = QMSystem::new(&ctx, &[(1, 1)]);
        let r = check_bohr_density(&psi, Rational64::new(1, 2), 50).unwrap();
        assert!(r.asserted && r.density >= r.floor);
        assert_eq!(check_bohr_density(&psi, Rational64::one(), 50).unwrap().density, Rational64::one());
        let empty = QMSystem::empty(&ctx);
        assert_eq!(check_bohr_density(&empty, Rational64::new(1, 100), 50).unwrap().density, Rational64::one());
    }
}
