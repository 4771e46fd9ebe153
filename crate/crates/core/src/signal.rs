//! Dense functions F_p -> C.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, MultChar, QuadPhase};
use crate::numeric::{pairwise_sum, pairwise_sum_real, C64};

#[derive(Debug, Clone)]
pub struct Signal {
    pub ctx: Arc<FieldCtx>,
    pub values: Vec<C64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignalJson {
    pub p: u64,
    pub values: Vec<[f64; 2]>,
}

impl Signal {
    pub fn from_values(ctx: &Arc<FieldCtx>, values: Vec<C64>) -> Result<Signal> {
        if values.len() != ctx.p as usize {
            return Err(Error::Length { expected: ctx.p as usize, got: values.len() });
        }
        Ok(Signal { ctx: ctx.clone(), values })
    }

    pub fn from_fn(ctx: &Arc<FieldCtx>, f: impl FnMut(u64) -> C64) -> Signal {
        Signal { ctx: ctx.clone(), values: (0..ctx.p).map(f).collect() }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: C64) -> Signal {
        Signal::from_fn(ctx, |_| c)
    }

    pub fn ones(ctx: &Arc<FieldCtx>) -> Signal {
        Signal::constant(ctx, C64::new(1.0, 0.0))
    }

    pub fn indicator(ctx: &Arc<FieldCtx>, member: impl Fn(u64) -> bool) -> Signal {
        Signal::from_fn(ctx, |x| C64::new(if member(x) { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn indicator_of(ctx: &Arc<FieldCtx>, set: &[u64]) -> Signal {
        let mut v = vec![C64::new(0.0, 0.0); ctx.p as usize];
        for &x in set {
            v[(x % ctx.p) as usize] = C64::new(1.0, 0.0);
        }
        Signal { ctx: ctx.clone(), values: v }
    }

    pub fn mult_char(ctx: &Arc<FieldCtx>, chi: MultChar) -> Signal {
        Signal::from_fn(ctx, |x| ctx.eval_mult_char(chi, x))
    }

    pub fn quad_phase(ctx: &Arc<FieldCtx>, phi: QuadPhase) -> Signal {
        Signal::from_fn(ctx, |x| ctx.eval_quad(phi, x))
    }

    pub fn p(&self) -> u64 {
        self.ctx.p
    }

    pub fn at(&self, x: u64) -> C64 {
        self.values[(x % self.ctx.p) as usize]
    }

    pub fn same_field(&self, other: &Signal) -> Result<()> {
        if self.ctx.p == other.ctx.p {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.ctx.p, other.ctx.p))
        }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Signal {
        Signal { ctx: self.ctx.clone(), values: self.values.iter().map(|&z| f(z)).collect() }
    }

    pub fn zip(&self, other: &Signal, f: impl Fn(C64, C64) -> C64) -> Result<Signal> {
        self.same_field(other)?;
        Ok(Signal {
            ctx: self.ctx.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn mul(&self, other: &Signal) -> Result<Signal> {
        self.zip(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: C64) -> Signal {
        self.map(|z| z * c)
    }

    pub fn conj(&self) -> Signal {
        self.map(|z| z.conj())
    }

    /// x -> f(x + h)
    pub fn translate(&self, h: u64) -> Signal {
        let p = self.ctx.p;
        Signal::from_fn(&self.ctx, |x| self.values[((x + h) % p) as usize])
    }

    /// E_x f(x)
    pub fn mean(&self) -> C64 {
        pairwise_sum(&self.values) / self.ctx.p as f64
    }

    /// <f, g> = E_x f(x) conj(g(x))
    pub fn inner(&self, other: &Signal) -> Result<C64> {
        self.same_field(other)?;
        let prods: Vec<C64> =
            self.values.iter().zip(&other.values).map(|(&a, &b)| a * b.conj()).collect();
        Ok(pairwise_sum(&prods) / self.ctx.p as f64)
    }

    fn moment(&self, q: i32) -> f64 {
        let xs: Vec<f64> = self.values.iter().map(|z| z.norm().powi(q)).collect();
        pairwise_sum_real(&xs) / self.ctx.p as f64
    }

    pub fn l1(&self) -> f64 {
        self.moment(1)
    }

    pub fn l2(&self) -> f64 {
        self.l2_sq().sqrt()
    }

    pub fn l2_sq(&self) -> f64 {
        let xs: Vec<f64> = self.values.iter().map(|z| z.norm_sqr()).collect();
        pairwise_sum_real(&xs) / self.ctx.p as f64
    }

    pub fn l4(&self) -> f64 {
        let xs: Vec<f64> = self.values.iter().map(|z| z.norm_sqr().powi(2)).collect();
        (pairwise_sum_real(&xs) / self.ctx.p as f64).powf(0.25)
    }

    pub fn linf(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Signal) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> SignalJson {
        SignalJson { p: self.ctx.p, values: self.values.iter().map(|z| [z.re, z.im]).collect() }
    }

    pub fn from_json(j: &SignalJson) -> Result<Signal> {
        let ctx = FieldCtx::new(j.p)?;
        Signal::from_values(&ctx, j.values.iter().map(|v| C64::new(v[0], v[1])).collect())
    }

    /// Entries uniform in the unit square [-1,1]^2.
    pub fn random<R: Rng>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Signal {
        Signal::from_fn(ctx, |_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    /// Random entries rescaled so that ||f||_2 = 1.
    pub fn random_unit_l2<R: Rng>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Signal {
        let f = Signal::random(ctx, rng);
        let n = f.l2();
        f.scale(C64::new(1.0 / n, 0.0))
    }

    /// Random entries of modulus at most one.
    pub fn random_bounded<R: Rng>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Signal {
        Signal::from_fn(ctx, |_| {
            C64::from_polar(rng.gen_range(0.0..1.0f64).sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
        })
    }

    /// Random entries of modulus exactly one.
    pub fn random_unimodular<R: Rng>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Signal {
        Signal::from_fn(ctx, |_| C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
    }

    /// Indicator of a random set, each element kept with probability `density`.
    pub fn random_indicator<R: Rng>(ctx: &Arc<FieldCtx>, rng: &mut R, density: f64) -> Signal {
        Signal::from_fn(ctx, |_| C64::new(if rng.gen_bool(density) { 1.0 } else { 0.0 }, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn norms_are_ordered() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [5u64, 13, 31] {
            let ctx = FieldCtx::new(p).unwrap();
            for _ in 0..50 {
                let f = Signal::random(&ctx, &mut rng);
                let (a, b, c, d) = (f.l1(), f.l2(), f.l4(), f.linf());
                assert!(a <= b + 1e-10 && b <= c + 1e-10 && c <= d + 1e-10);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let ctx = FieldCtx::new(7).unwrap();
        let f = Signal::mult_char(&ctx, MultChar { k: 1 });
        let s = serde_json::to_string(&f.to_json()).unwrap();
        let g = Signal::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(f.values, g.values);
    }
}
