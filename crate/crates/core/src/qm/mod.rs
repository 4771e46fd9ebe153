//! QM-systems x -> (a_i x^2/p, 2 a_i x/p, psi_i(x))_i into G^d, where
//! G = R/Z x R/Z x S^1, together with their orbit-closure groups, boxes,
//! Bohr sets and trigonometric polynomials.
//!
//! Points on an orbit closure have rational coordinates with denominators
//! p, p and p-1, so they are stored as integer numerators and every
//! metric or lattice question is answered in integer arithmetic.

mod bounds;
mod counting;
mod group;
mod trig;

use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::FieldCtx;

pub use bounds::{box_measure, check_bohr_density, check_pigeon_projection, BohrDensityReport, PigeonReport};
pub use counting::{
    baby_count, counting_integral_enum, counting_integral_i, counting_lemma_check, BabyCount, CountingLemmaReport,
};
pub use group::HGroup;
pub use trig::{Mode, TrigPoly, TrigPolyJson, TrigTermJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QmDim {
    pub a: u64,
    pub k: u64,
}

#[derive(Debug, Clone)]
pub struct QMSystem {
    pub ctx: Arc<FieldCtx>,
    pub dims: Vec<QmDim>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QMSystemJson {
    pub p: u64,
    pub dims: Vec<QmDim>,
}

/// Numerators of one G-coordinate: theta1 = t/p, theta2 = u/p, z = e(v/(p-1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GCoord {
    pub t: u64,
    pub u: u64,
    pub v: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GPoint {
    pub p: u64,
    pub coords: Vec<GCoord>,
}

/// ||n/den||_{R/Z} = min(n, den - n)/den as an exact fraction.
fn circle_dist(n: u64, den: u64) -> Rational64 {
    let n = n % den;
    Rational64::new(n.min(den - n) as i64, den as i64)
}

/// ||n/den|| <= eps, decided by cross-multiplication.
fn circle_le(n: u64, den: u64, eps: Rational64) -> bool {
    let n = n % den;
    let m = n.min(den - n) as i128;
    m * (*eps.denom() as i128) <= (*eps.numer() as i128) * den as i128
}

impl GPoint {
    pub fn identity(p: u64, d: usize) -> GPoint {
        GPoint { p, coords: vec![GCoord { t: 0, u: 0, v: 0 }; d] }
    }

    pub fn d(&self) -> usize {
        self.coords.len()
    }

    pub fn op(&self, other: &GPoint) -> GPoint {
        let (p, q) = (self.p, self.p - 1);
        GPoint {
            p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| GCoord { t: (a.t + b.t) % p, u: (a.u + b.u) % p, v: (a.v + b.v) % q })
                .collect(),
        }
    }

    pub fn inverse(&self) -> GPoint {
        let (p, q) = (self.p, self.p - 1);
        GPoint {
            p,
            coords: self
                .coords
                .iter()
                .map(|c| GCoord { t: (p - c.t) % p, u: (p - c.u) % p, v: (q - c.v) % q })
                .collect(),
        }
    }

    /// |g| = max over coordinates of the circle distances to 0.
    pub fn metric(&self) -> Rational64 {
        let (p, q) = (self.p, self.p - 1);
        self.coords
            .iter()
            .flat_map(|c| [circle_dist(c.t, p), circle_dist(c.u, p), circle_dist(c.v, q)])
            .fold(Rational64::from_integer(0), |a, b| a.max(b))
    }

    /// |g| <= eps, exactly.
    pub fn within(&self, eps: Rational64) -> bool {
        let (p, q) = (self.p, self.p - 1);
        self.coords.iter().all(|c| circle_le(c.t, p, eps) && circle_le(c.u, p, eps) && circle_le(c.v, q, eps))
    }

    /// Real coordinates (theta1, theta2, arg z / 2 pi) in [0, 1).
    pub fn to_real(&self) -> Vec<[f64; 3]> {
        let (p, q) = (self.p as f64, (self.p - 1) as f64);
        self.coords.iter().map(|c| [c.t as f64 / p, c.u as f64 / p, c.v as f64 / q]).collect()
    }
}

impl QMSystem {
    pub fn new(ctx: &Arc<FieldCtx>, dims: &[(u64, u64)]) -> QMSystem {
        let (p, q) = (ctx.p, ctx.p - 1);
        QMSystem { ctx: ctx.clone(), dims: dims.iter().map(|&(a, k)| QmDim { a: a % p, k: k % q }).collect() }
    }

    pub fn empty(ctx: &Arc<FieldCtx>) -> QMSystem {
        QMSystem { ctx: ctx.clone(), dims: Vec::new() }
    }

    pub fn d(&self) -> usize {
        self.dims.len()
    }

    pub fn p(&self) -> u64 {
        self.ctx.p
    }

    /// The system with `other`'s dimensions appended; `self` is a prefix of the result.
    pub fn extend(&self, other: &QMSystem) -> QMSystem {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        QMSystem { ctx: self.ctx.clone(), dims }
    }

    pub fn eval(&self, x: u64) -> GPoint {
        let ctx = &self.ctx;
        let (p, q) = (ctx.p, ctx.p - 1);
        let x = x % p;
        let x2 = x * x % p;
        let lx = if x == 0 { 0 } else { ctx.dlog[x as usize] as u64 };
        GPoint {
            p,
            coords: self
                .dims
                .iter()
                .map(|dm| GCoord { t: dm.a * x2 % p, u: 2 * dm.a % p * x % p, v: dm.k * lx % q })
                .collect(),
        }
    }

    /// B(Psi, eps) = {x : |Psi(x)| <= eps}.
    pub fn bohr_set(&self, eps: Rational64) -> Vec<u64> {
        (0..self.p()).filter(|&x| self.eval(x).within(eps)).collect()
    }

    /// xi . a == 0 mod p
    pub fn in_lambda_plus(&self, xi: &[i64]) -> bool {
        let p = self.p() as i128;
        let s: i128 = xi.iter().zip(&self.dims).map(|(&x, dm)| x as i128 * dm.a as i128).sum();
        s.rem_euclid(p) == 0
    }

    /// xi . k == 0 mod p-1, i.e. prod psi_i^{xi_i} is the trivial character.
    pub fn in_lambda_times(&self, xi: &[i64]) -> bool {
        let q = self.p() as i128 - 1;
        let s: i128 = xi.iter().zip(&self.dims).map(|(&x, dm)| x as i128 * dm.k as i128).sum();
        s.rem_euclid(q) == 0
    }

    pub fn to_json(&self) -> QMSystemJson {
        QMSystemJson { p: self.p(), dims: self.dims.clone() }
    }

    pub fn from_json(j: &QMSystemJson) -> Result<QMSystem> {
        let ctx = FieldCtx::new(j.p)?;
        let dims: Vec<(u64, u64)> = j.dims.iter().map(|d| (d.a, d.k)).collect();
        Ok(QMSystem::new(&ctx, &dims))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eval_examples() {
        let ctx = FieldCtx::new(5).unwrap();
        let psi = QMSystem::new(&ctx, &[(1, 0)]);
        assert_eq!(psi.eval(0), GPoint::identity(5, 1));
        assert_eq!(psi.eval(2).coords[0], GCoord { t: 4, u: 4, v: 0 });
        let psi = QMSystem::new(&ctx, &[(1, 1)]);
        assert_eq!(psi.eval(3).coords[0], GCoord { t: 4, u: 1, v: 3 });
    }

    #[test]
    fn bohr_examples() {
        let ctx = FieldCtx::new(13).unwrap();
        let psi = QMSystem::new(&ctx, &[(1, 0)]);
        assert_eq!(psi.bohr_set(Rational64::from_integer(1)).len(), 13);
        assert_eq!(QMSystem::empty(&ctx).bohr_set(Rational64::new(1, 100)).len(), 13);
        let b = psi.bohr_set(Rational64::new(1, 5));
        assert!(b.contains(&0));
        // brute force with floats away from ties: |x^2/13| and |2x/13| <= 0.2
        let dist = |n: u64| (n % 13).min(13 - n % 13) as f64 / 13.0;
        let brute: Vec<u64> = (0..13).filter(|&x| dist(x * x) <= 0.2 && dist(2 * x) <= 0.2).collect();
        assert_eq!(b, brute);
    }

    #[test]
    fn metric_is_symmetric_and_subadditive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ctx = FieldCtx::new(31).unwrap();
        let psi = QMSystem::new(&ctx, &[(3, 4), (7, 10)]);
        for _ in 0..300 {
            let (x, y, z) = (rng.gen_range(0..31), rng.gen_range(0..31), rng.gen_range(0..31));
            let (a, b, c) = (psi.eval(x), psi.eval(y), psi.eval(z));
            let dab = a.op(&b.inverse()).metric();
            assert_eq!(dab, b.op(&a.inverse()).metric());
            let dac = a.op(&c.inverse()).metric();
            let dcb = c.op(&b.inverse()).metric();
            assert!(dab <= dac + dcb);
        }
    }

    #[test]
    fn lattices_have_full_rank() {
        let ctx = FieldCtx::new(11).unwrap();
        let psi = QMSystem::new(&ctx, &[(3, 4), (7, 5)]);
        for i in 0..2 {
            let mut e = vec![0i64; 2];
            e[i] = 11;
            assert!(psi.in_lambda_plus(&e));
            e[i] = 10;
            assert!(psi.in_lambda_times(&e));
        }
    }
}
