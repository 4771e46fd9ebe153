//! Arithmetic in F_p: primitive roots, discrete logs, and character tables.

use std::f64::consts::TAU;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{mod_pow, prime_factors, smallest_factor, C64};

pub const MAX_P: u64 = 1 << 22;

#[derive(Debug)]
pub struct FieldCtx {
    pub p: u64,
    pub g: u64,
    /// dlog[x] for x in 1..p; dlog[0] is unused and set to 0.
    pub dlog: Vec<u32>,
    /// pow_g[a] = g^a mod p for 0 <= a < p-1.
    pub pow_g: Vec<u32>,
    pub roots_p: Vec<C64>,
    pub roots_pm1: Vec<C64>,
}

fn roots(n: u64) -> Vec<C64> {
    (0..n)
        .map(|j| {
            let (s, c) = (TAU * j as f64 / n as f64).sin_cos();
            C64::new(c, s)
        })
        .collect()
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Arc<FieldCtx>> {
        if !(3..=MAX_P).contains(&p) {
            return Err(Error::ModulusRange(p));
        }
        if let Some(factor) = smallest_factor(p) {
            return Err(Error::Composite { p, factor });
        }
        let qs = prime_factors(p - 1);
        let g = (2..p)
            .find(|&c| qs.iter().all(|&q| mod_pow(c, (p - 1) / q, p) != 1))
            .expect("a prime has a primitive root");
        let n = (p - 1) as usize;
        let mut dlog = vec![0u32; p as usize];
        let mut pow_g = vec![0u32; n];
        let mut x = 1u64;
        for a in 0..n {
            pow_g[a] = x as u32;
            dlog[x as usize] = a as u32;
            x = x * g % p;
        }
        Ok(Arc::new(FieldCtx {
            p,
            g,
            dlog,
            pow_g,
            roots_p: roots(p),
            roots_pm1: roots(p - 1),
        }))
    }

    #[inline]
    pub fn red(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.p
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        (x + self.p - y) % self.p
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        x * y % self.p
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        (self.p - x % self.p) % self.p
    }

    pub fn inv(&self, x: u64) -> Option<u64> {
        if x % self.p == 0 {
            None
        } else {
            Some(mod_pow(x, self.p - 2, self.p))
        }
    }

    /// e_p(j) for an integer residue j.
    #[inline]
    pub fn e_p(&self, j: u64) -> C64 {
        self.roots_p[(j % self.p) as usize]
    }

    /// e(j / (p-1)).
    #[inline]
    pub fn e_pm1(&self, j: u64) -> C64 {
        self.roots_pm1[(j % (self.p - 1)) as usize]
    }

    /// e_p(r x).
    #[inline]
    pub fn eval_add_char(&self, r: u64, x: u64) -> C64 {
        self.e_p(r % self.p * (x % self.p))
    }

    #[inline]
    pub fn eval_mult_char(&self, chi: MultChar, x: u64) -> C64 {
        let x = x % self.p;
        if x == 0 {
            return C64::new(1.0, 0.0);
        }
        let n = self.p - 1;
        self.e_pm1(chi.k % n * self.dlog[x as usize] as u64 % n)
    }

    #[inline]
    pub fn eval_quad(&self, phi: QuadPhase, x: u64) -> C64 {
        let x = x % self.p;
        let e = (phi.r % self.p * (x * x % self.p) + phi.s % self.p * x) % self.p;
        self.e_p(e)
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.p
    }
}

/// The character chi(g^a) = e(k a / (p-1)), extended by chi(0) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultChar {
    pub k: u64,
}

impl MultChar {
    pub fn principal() -> Self {
        MultChar { k: 0 }
    }

    pub fn is_principal(&self, ctx: &FieldCtx) -> bool {
        self.k % (ctx.p - 1) == 0
    }

    pub fn conj(&self, ctx: &FieldCtx) -> Self {
        let n = ctx.p - 1;
        MultChar { k: (n - self.k % n) % n }
    }
}

/// x -> e_p(r x^2 + s x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadPhase {
    pub r: u64,
    pub s: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_primitive_roots() {
        let f = FieldCtx::new(7).unwrap();
        assert_eq!(f.g, 3);
        assert_eq!(f.dlog[3], 1);
        assert_eq!(f.dlog[2], 2);
        assert_eq!(FieldCtx::new(5).unwrap().g, 2);
        // first few primitive roots, checked against the orders of 2..p by brute force
        for p in [3u64, 11, 13, 17, 19, 23, 31, 41, 101] {
            let f = FieldCtx::new(p).unwrap();
            let order = |c: u64| (1..p).find(|&e| mod_pow(c, e, p) == 1).unwrap();
            let brute = (2..p).find(|&c| order(c) == p - 1).unwrap();
            assert_eq!(f.g, brute, "p={p}");
        }
    }

    #[test]
    fn composites_name_a_factor() {
        match FieldCtx::new(9) {
            Err(Error::Composite { p: 9, factor: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(FieldCtx::new(91), Err(Error::Composite { factor: 7, .. })));
        assert!(FieldCtx::new(2).is_err());
    }

    #[test]
    fn character_examples() {
        let f7 = FieldCtx::new(7).unwrap();
        assert!((f7.eval_add_char(0, 5) - C64::new(1.0, 0.0)).norm() < 1e-15);
        let expect = C64::from_polar(1.0, 12.0 * std::f64::consts::PI / 7.0);
        assert!((f7.eval_add_char(3, 2) - expect).norm() < 1e-12);
        let f5 = FieldCtx::new(5).unwrap();
        let e = C64::from_polar(1.0, TAU / 5.0);
        assert!((f5.eval_add_char(1, 1) - e).norm() < 1e-12);
        assert!((f5.eval_mult_char(MultChar { k: 2 }, 4) - 1.0).norm() < 1e-12);
        assert_eq!(f5.eval_mult_char(MultChar { k: 1 }, 0), C64::new(1.0, 0.0));
        for x in 0..5 {
            assert_eq!(f5.eval_mult_char(MultChar { k: 0 }, x), C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn roots_have_unit_modulus_and_dlog_round_trips() {
        for p in [5u64, 31, 101, 1009] {
            let f = FieldCtx::new(p).unwrap();
            assert!(f.roots_p.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
            assert!(f.roots_pm1.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
            for x in 1..p {
                assert_eq!(mod_pow(f.g, f.dlog[x as usize] as u64, p), x);
            }
            let mut seen = vec![false; (p - 1) as usize];
            for x in 1..p {
                seen[f.dlog[x as usize] as usize] = true;
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn orthogonality() {
        for p in [5u64, 13, 31, 101] {
            let f = FieldCtx::new(p).unwrap();
            for k in 1..p - 1 {
                let s: C64 = (1..p).map(|x| f.eval_mult_char(MultChar { k }, x)).sum();
                assert!(s.norm() < 1e-9);
            }
            for r in 1..p {
                let s: C64 = (0..p).map(|x| f.eval_add_char(r, x)).sum();
                assert!(s.norm() < 1e-9);
            }
        }
    }

    proptest! {
        #[test]
        fn multiplicative(k in 0u64..100, x in 1u64..101, y in 1u64..101) {
            let f = FieldCtx::new(101).unwrap();
            let chi = MultChar { k };
            let lhs = f.eval_mult_char(chi, x * y % 101);
            let rhs = f.eval_mult_char(chi, x) * f.eval_mult_char(chi, y);
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }

        #[test]
        fn quad_phase_unit(r in 0u64..31, s in 0u64..31, x in 0u64..31) {
            let f = FieldCtx::new(31).unwrap();
            let phi = QuadPhase { r, s };
            let z = f.eval_quad(phi, x);
            prop_assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }
}
