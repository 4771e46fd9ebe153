//! Gauss sums, shifted products of multiplicative characters, mixed
//! quadratic-times-multiplicative averages and the eight-fold box correlation
//! of F(x) = chi(x) chi'(x + h). Characters take the value 1 at 0.

use std::path::Path;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::field::{FieldCtx, MultChar, QuadPhase};
use crate::numeric::{pairwise_sum, pairwise_sum_real, C64, ONE};

/// sum_x e_p(a x^2 + b x), with |sum| = sqrt p (a != 0), 0 (a = 0, b != 0)
/// or p (a = b = 0) checked to 1e-8.
pub fn gauss_sum(ctx: &FieldCtx, a: u64, b: u64) -> Result<C64> {
    let (a, b) = (a % ctx.p, b % ctx.p);
    let terms: Vec<C64> = ctx.elements().map(|x| ctx.eval_quad(QuadPhase { r: a, s: b }, x)).collect();
    let s = pairwise_sum(&terms);
    let p = ctx.p as f64;
    let want = if a != 0 {
        p.sqrt()
    } else if b != 0 {
        0.0
    } else {
        p
    };
    if (s.norm() - want).abs() > 1e-8 {
        return Err(Error::BoundViolated(format!("|G({a}, {b})| = {} but expected {want}", s.norm())));
    }
    Ok(s)
}

/// sum_x prod_i chi_i(x + h_i) and the bound (t-1) sqrt p + t, which the sum
/// must respect (the "+ t" absorbs the convention chi(0) = 1).
pub fn weil_product_sum(ctx: &FieldCtx, chis: &[MultChar], shifts: &[u64]) -> Result<(C64, f64)> {
    let t = chis.len();
    pre(t >= 1 && t == shifts.len(), || "need one shift per character".into())?;
    pre((t as u64) < ctx.p, || format!("t = {t} must be below p"))?;
    let mut hs: Vec<u64> = shifts.iter().map(|h| h % ctx.p).collect();
    hs.sort_unstable();
    hs.dedup();
    pre(hs.len() == t, || "shifts must be distinct".into())?;
    pre(chis.iter().any(|c| !c.is_principal(ctx)), || "all characters principal".into())?;
    let terms: Vec<C64> = ctx
        .elements()
        .map(|x| {
            chis.iter().zip(shifts).fold(ONE, |acc, (&c, &h)| acc * ctx.eval_mult_char(c, ctx.add(x, h % ctx.p)))
        })
        .collect();
    let s = pairwise_sum(&terms);
    let bound = (t as f64 - 1.0) * (ctx.p as f64).sqrt() + t as f64;
    if s.norm() > bound + 1e-9 {
        return Err(Error::BoundViolated(format!("|sum| = {} above (t-1) sqrt p + t = {bound}", s.norm())));
    }
    Ok((s, bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedSum {
    pub value: C64,
    pub magnitude: f64,
    /// magnitude * p^{1/16}
    pub normalized: f64,
}

/// E_x e_p(a x^2 + b x) chi(x) chi'(x + h).
pub fn mixed_sum(ctx: &FieldCtx, a: u64, b: u64, chi: MultChar, chi_prime: MultChar, h: u64) -> Result<MixedSum> {
    let h = h % ctx.p;
    pre(h != 0, || "h must be nonzero".into())?;
    let (a, b) = (a % ctx.p, b % ctx.p);
    pre(
        !(a == 0 && b == 0 && chi.is_principal(ctx) && chi_prime.is_principal(ctx)),
        || "a = b = 0 with both characters principal".into(),
    )?;
    let terms: Vec<C64> = ctx
        .elements()
        .map(|x| {
            ctx.eval_quad(QuadPhase { r: a, s: b }, x)
                * ctx.eval_mult_char(chi, x)
                * ctx.eval_mult_char(chi_prime, ctx.add(x, h))
        })
        .collect();
    let value = pairwise_sum(&terms) / ctx.p as f64;
    let magnitude = value.norm();
    Ok(MixedSum { value, magnitude, normalized: magnitude * (ctx.p as f64).powf(1.0 / 16.0) })
}

pub const U3_BOX_MAX_P: u64 = 61;

fn box_factor(ctx: &FieldCtx, chi: MultChar, chi_prime: MultChar, h: u64) -> Vec<C64> {
    ctx.elements().map(|x| ctx.eval_mult_char(chi, x) * ctx.eval_mult_char(chi_prime, ctx.add(x, h))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct U3Box {
    /// E_{x,z} prod_{omega in {0,1}^3} C^{|omega|} F(x + omega.z)
    pub value: f64,
    /// number of z in F_p^3 for which the sixteen shifts omega.z, h + omega.z
    /// are not pairwise distinct
    pub degenerate: u64,
    /// degenerate / p^3 + (15 sqrt p + 16)/p, from the shifted-product bound with t = 16
    pub weil_bound: f64,
}

/// The eight-fold correlation of F(x) = chi(x) chi'(x + h), computed as
/// E_{z1,z2} |E_x G(x)|^2 with G(x) = prod_{omega in {0,1}^2} C^{|omega|} F(x + omega.z).
pub fn u3_box_sum(ctx: &FieldCtx, chi: MultChar, chi_prime: MultChar, h: u64) -> Result<U3Box> {
    let p = ctx.p;
    let h = h % p;
    pre(h != 0, || "h must be nonzero".into())?;
    pre(p <= U3_BOX_MAX_P, || format!("p = {p} above {U3_BOX_MAX_P}"))?;
    pre(!(chi.is_principal(ctx) && chi_prime.is_principal(ctx)), || "both characters principal".into())?;
    let f = box_factor(ctx, chi, chi_prime, h);
    let at = |x: u64| f[(x % p) as usize];
    let rows: Vec<f64> = (0..p)
        .into_par_iter()
        .map(|z1| {
            let vals: Vec<f64> = (0..p)
                .map(|z2| {
                    let g: Vec<C64> = (0..p)
                        .map(|x| at(x) * at(x + z1).conj() * at(x + z2).conj() * at(x + z1 + z2))
                        .collect();
                    (pairwise_sum(&g) / p as f64).norm_sqr()
                })
                .collect();
            pairwise_sum_real(&vals)
        })
        .collect();
    let value = pairwise_sum_real(&rows) / (p * p) as f64;
    let degenerate = degenerate_triples(p, h);
    let pf = p as f64;
    let weil_bound = degenerate as f64 / (pf * pf * pf) + (15.0 * pf.sqrt() + 16.0) / pf;
    if value > weil_bound + 1e-9 {
        return Err(Error::BoundViolated(format!("box sum {value} above {weil_bound}")));
    }
    Ok(U3Box { value, degenerate, weil_bound })
}

/// The eight-fold average by a direct loop over x, z1, z2, z3 (O(p^4)).
pub fn u3_box_sum_direct(ctx: &FieldCtx, chi: MultChar, chi_prime: MultChar, h: u64) -> f64 {
    let p = ctx.p;
    let f = box_factor(ctx, chi, chi_prime, h % p);
    let rows: Vec<C64> = (0..p)
        .into_par_iter()
        .map(|z1| {
            let mut terms = Vec::with_capacity((p * p * p) as usize);
            for z2 in 0..p {
                for z3 in 0..p {
                    for x in 0..p {
                        let mut acc = ONE;
                        for w in 0..8u64 {
                            let s = x + (w & 1) * z1 + ((w >> 1) & 1) * z2 + ((w >> 2) & 1) * z3;
                            let v = f[(s % p) as usize];
                            acc *= if w.count_ones() % 2 == 1 { v.conj() } else { v };
                        }
                        terms.push(acc);
                    }
                }
            }
            pairwise_sum(&terms)
        })
        .collect();
    (pairwise_sum(&rows) / (p as f64).powi(4)).re
}

fn degenerate_triples(p: u64, h: u64) -> u64 {
    (0..p * p * p)
        .into_par_iter()
        .filter(|&idx| {
            let z = [idx % p, (idx / p) % p, idx / (p * p)];
            let mut shifts = Vec::with_capacity(16);
            for w in 0..8u64 {
                let s = (0..3).filter(|&i| (w >> i) & 1 == 1).map(|i| z[i]).sum::<u64>() % p;
                shifts.push(s);
                shifts.push((s + h) % p);
            }
            shifts.sort_unstable();
            shifts.windows(2).any(|w| w[0] == w[1])
        })
        .count() as u64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub k: u64,
    pub k_prime: u64,
    pub h: u64,
    pub magnitude: f64,
    pub bound: f64,
    pub slack: f64,
}

/// `count` random admissible parameter draws at p, each compared with c p^{-1/16}.
pub fn mixed_sum_sweep<R: Rng>(ctx: &Arc<FieldCtx>, count: usize, c: f64, rng: &mut R) -> Result<Vec<SweepRow>> {
    let p = ctx.p;
    let bound = c * (p as f64).powf(-1.0 / 16.0);
    let mut rows = Vec::with_capacity(count);
    while rows.len() < count {
        let (a, b) = (rng.gen_range(0..p), rng.gen_range(0..p));
        let (k, k_prime) = (rng.gen_range(0..p - 1), rng.gen_range(0..p - 1));
        let h = rng.gen_range(1..p);
        if a == 0 && b == 0 && k == 0 && k_prime == 0 {
            continue;
        }
        let m = mixed_sum(ctx, a, b, MultChar { k }, MultChar { k: k_prime }, h)?;
        rows.push(SweepRow { p, a, b, k, k_prime, h, magnitude: m.magnitude, bound, slack: bound - m.magnitude });
    }
    Ok(rows)
}

pub fn write_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gauss_examples() {
        let ctx = FieldCtx::new(13).unwrap();
        assert!((gauss_sum(&ctx, 0, 0).unwrap() - C64::new(13.0, 0.0)).norm() < 1e-9);
        assert!(gauss_sum(&ctx, 0, 3).unwrap().norm() < 1e-9);
        assert!((gauss_sum(&ctx, 1, 0).unwrap().norm() - 13f64.sqrt()).abs() < 1e-9);
        // p = 13 is 1 mod 4, so the quadratic Gauss sum is real: sqrt 13
        assert!((gauss_sum(&ctx, 1, 0).unwrap() - C64::new(13f64.sqrt(), 0.0)).norm() < 1e-9);
    }

    #[test]
    fn weil_examples() {
        let ctx = FieldCtx::new(31).unwrap();
        let (s, bound) = weil_product_sum(&ctx, &[MultChar { k: 5 }], &[0]).unwrap();
        assert!((s - ONE).norm() < 1e-9);
        assert_eq!(bound, 1.0);
        assert!(weil_product_sum(&ctx, &[MultChar { k: 0 }, MultChar { k: 0 }], &[1, 2]).is_err());
        assert!(weil_product_sum(&ctx, &[MultChar { k: 1 }, MultChar { k: 2 }], &[3, 3]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let chis: Vec<MultChar> = (0..3).map(|_| MultChar { k: rng.gen_range(1..30) }).collect();
            let mut hs: Vec<u64> = (0..31).collect();
            for i in (1..31).rev() {
                hs.swap(i, rng.gen_range(0..=i));
            }
            weil_product_sum(&ctx, &chis, &hs[..3]).unwrap();
        }
    }

    #[test]
    fn mixed_sum_cases() {
        let ctx = FieldCtx::new(101).unwrap();
        let one = MultChar::principal();
        let m = mixed_sum(&ctx, 3, 7, one, one, 5).unwrap();
        assert!((m.magnitude - 1.0 / 101f64.sqrt()).abs() < 1e-12);
        assert!(mixed_sum(&ctx, 0, 0, one, one, 5).is_err());
        assert!(mixed_sum(&ctx, 1, 0, MultChar { k: 3 }, one, 0).is_err());
        // a = b = 0, chi' principal: E_x chi(x) = 1/p by the convention at 0
        let m = mixed_sum(&ctx, 0, 0, MultChar { k: 50 }, one, 5).unwrap();
        assert!((m.magnitude - 1.0 / 101.0).abs() < 1e-12);
    }

    #[test]
    fn box_sum_matches_direct_loop() {
        let ctx = FieldCtx::new(13).unwrap();
        let quad = MultChar { k: 6 };
        for (chi, chi_p, h) in [(quad, MultChar::principal(), 1), (MultChar { k: 1 }, MultChar { k: 4 }, 3)] {
            let fast = u3_box_sum(&ctx, chi, chi_p, h).unwrap();
            let slow = u3_box_sum_direct(&ctx, chi, chi_p, h);
            assert!((fast.value - slow).abs() < 1e-10, "{} vs {slow}", fast.value);
            assert!(fast.value <= fast.weil_bound);
        }
    }

    #[test]
    fn degenerate_count_is_quadratic() {
        for p in [7u64, 13] {
            let d = degenerate_triples(p, 1);
            assert!(d > 0 && d < 64 * p * p, "p={p}: {d}");
        }
    }

    #[test]
    fn sweep_csv() {
        let ctx = FieldCtx::new(31).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rows = mixed_sum_sweep(&ctx, 10, 1.0, &mut rng).unwrap();
        assert_eq!(rows.len(), 10);
        let dir = std::env::temp_dir().join("monoquad_sweep_test.csv");
        write_sweep_csv(&rows, &dir).unwrap();
        let text = std::fs::read_to_string(&dir).unwrap();
        assert!(text.starts_with("p,a,b,k,k_prime,h,magnitude,bound,slack"));
        assert_eq!(text.lines().count(), 11);
    }
}
