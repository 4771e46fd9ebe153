//! Additive and multiplicative transforms and the norm hierarchy
//! u2+ <= u3+ <= QM <= L1.

use std::sync::Arc;

use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::FieldCtx;
use crate::numeric::{pairwise_sum, pairwise_sum_by, C64, ZERO};
use crate::signal::Signal;

/// f^(r) = E_x f(x) e_p(-r x), indexed by r.
#[derive(Debug, Clone)]
pub struct AddSpectrum {
    pub ctx: Arc<FieldCtx>,
    pub coeffs: Vec<C64>,
}

/// <f, chi_k> = E_{x in F} f(x) conj(chi_k(x)), indexed by k. The x = 0 term is included.
#[derive(Debug, Clone)]
pub struct MultSpectrum {
    pub ctx: Arc<FieldCtx>,
    pub coeffs: Vec<C64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub p: u64,
    pub kind: String,
    pub legend: String,
    pub values: Vec<[f64; 2]>,
}

impl AddSpectrum {
    pub fn at(&self, r: u64) -> C64 {
        self.coeffs[(r % self.ctx.p) as usize]
    }

    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            p: self.ctx.p,
            kind: "additive".into(),
            legend: "values[r] = E_x f(x) e_p(-r x), r = 0..p-1".into(),
            values: self.coeffs.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl MultSpectrum {
    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            p: self.ctx.p,
            kind: "multiplicative".into(),
            legend: format!(
                "values[k] = E_x f(x) conj(chi_k(x)), chi_k(g^a) = e(k a/(p-1)), chi(0) = 1, g = {}",
                self.ctx.g
            ),
            values: self.coeffs.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Forward DFT normalised by 1/p: out[s] = E_x h(x) e_p(-s x).
struct Dft {
    fwd: Arc<dyn Fft<f64>>,
    n: usize,
}

impl Dft {
    fn new(n: usize) -> Dft {
        Dft { fwd: FftPlanner::new().plan_fft_forward(n), n }
    }

    fn run(&self, buf: &mut [C64]) {
        self.fwd.process(buf);
        let inv = 1.0 / self.n as f64;
        for z in buf.iter_mut() {
            *z *= inv;
        }
    }
}

/// O(p^2) reference transform with pairwise accumulation.
pub fn add_transform_direct(f: &Signal) -> AddSpectrum {
    let ctx = &f.ctx;
    let p = ctx.p;
    let coeffs = (0..p)
        .map(|r| {
            let nr = ctx.neg(r);
            pairwise_sum_by(p as usize, |x| f.values[x] * ctx.e_p(nr * x as u64 % p)) / p as f64
        })
        .collect();
    AddSpectrum { ctx: ctx.clone(), coeffs }
}

pub fn add_invert_direct(spectrum: &AddSpectrum) -> Signal {
    let ctx = &spectrum.ctx;
    let p = ctx.p;
    Signal::from_fn(ctx, |x| pairwise_sum_by(p as usize, |r| spectrum.coeffs[r] * ctx.e_p(r as u64 * x % p)))
}

pub fn add_transform(f: &Signal) -> AddSpectrum {
    let mut buf = f.values.clone();
    Dft::new(buf.len()).run(&mut buf);
    AddSpectrum { ctx: f.ctx.clone(), coeffs: buf }
}

pub fn add_invert(spectrum: &AddSpectrum) -> Signal {
    let n = spectrum.coeffs.len();
    let mut buf = spectrum.coeffs.clone();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    Signal { ctx: spectrum.ctx.clone(), values: buf }
}

pub fn mult_spectrum(f: &Signal) -> MultSpectrum {
    let ctx = &f.ctx;
    let p = ctx.p;
    let n = (p - 1) as usize;
    // reindex F_p^* by the exponent a of g^a, then one DFT of length p-1
    let mut buf: Vec<C64> = (0..n).map(|a| f.values[ctx.pow_g[a] as usize]).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let f0 = f.values[0];
    let coeffs = buf.into_iter().map(|z| (z + f0) / p as f64).collect();
    MultSpectrum { ctx: ctx.clone(), coeffs }
}

pub fn mult_spectrum_direct(f: &Signal) -> MultSpectrum {
    let ctx = &f.ctx;
    let p = ctx.p;
    let coeffs = (0..p - 1)
        .map(|k| {
            let chi = crate::field::MultChar { k };
            pairwise_sum_by(p as usize, |x| f.values[x] * ctx.eval_mult_char(chi, x as u64).conj()) / p as f64
        })
        .collect();
    MultSpectrum { ctx: ctx.clone(), coeffs }
}

/// (f * g)(y) = E_x f(x) g(y - x)
pub fn convolve(f: &Signal, g: &Signal) -> Result<Signal> {
    f.same_field(g)?;
    let p = f.p();
    Ok(Signal::from_fn(&f.ctx, |y| {
        pairwise_sum_by(p as usize, |x| f.values[x] * g.values[((y + p - x as u64) % p) as usize]) / p as f64
    }))
}

/// A sup-norm value with the phase that attains it. The phase is
/// x -> e_p(r x^2 + s x) chi_k(x); unused parameters are zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: f64,
    pub r: u64,
    pub s: u64,
    pub k: u64,
}

impl NormValue {
    fn key(&self) -> (u64, u64, u64) {
        (self.r, self.s, self.k)
    }

    fn beats(&self, other: &NormValue) -> bool {
        self.value > other.value || (self.value == other.value && self.key() < other.key())
    }
}

fn best(cands: impl IntoIterator<Item = NormValue>) -> NormValue {
    let mut it = cands.into_iter();
    let mut b = it.next().expect("nonempty candidate list");
    for c in it {
        if c.beats(&b) {
            b = c;
        }
    }
    b
}

/// max_s |f^(s)|, reported with witness (0, s, 0).
pub fn norm_u2_plus(f: &Signal) -> NormValue {
    let spectrum = add_transform(f);
    best(spectrum.coeffs.iter().enumerate().map(|(s, z)| NormValue { value: z.norm(), r: 0, s: s as u64, k: 0 }))
}

/// max_k |<f, chi_k>|, principal character included; witness (0, 0, k).
/// Only a semi-norm: f(0) = -f(1) = 1 has value 0.
pub fn norm_u2_times(f: &Signal) -> NormValue {
    let spectrum = mult_spectrum(f);
    best(spectrum.coeffs.iter().enumerate().map(|(k, z)| NormValue { value: z.norm(), r: 0, s: 0, k: k as u64 }))
}

/// Table t[r][s] = <f, e_p(r x^2 + s x)>, one transform per r.
pub fn quad_correlations(f: &Signal) -> Vec<Vec<C64>> {
    let ctx = &f.ctx;
    let p = ctx.p;
    let dft = Dft::new(p as usize);
    (0..p)
        .into_par_iter()
        .map(|r| {
            let nr = ctx.neg(r);
            let mut buf: Vec<C64> =
                (0..p).map(|x| f.values[x as usize] * ctx.e_p(nr * (x * x % p) % p)).collect();
            dft.run(&mut buf);
            buf
        })
        .collect()
}

/// max over quadratic phases phi of |<f, phi>|; witness (r, s, 0).
pub fn norm_u3_plus(f: &Signal) -> NormValue {
    let table = quad_correlations(f);
    best(table.iter().enumerate().flat_map(|(r, row)| {
        row.iter().enumerate().map(move |(s, z)| NormValue { value: z.norm(), r: r as u64, s: s as u64, k: 0 })
    }))
}

/// max over phi chi with phi quadratic and chi any extended character; witness (r, s, k).
pub fn norm_qm(f: &Signal) -> NormValue {
    let ctx = &f.ctx;
    let p = ctx.p;
    let dft = Dft::new(p as usize);
    let per_r: Vec<NormValue> = (0..p)
        .into_par_iter()
        .map(|r| {
            let nr = ctx.neg(r);
            let base: Vec<C64> = (0..p).map(|x| f.values[x as usize] * ctx.e_p(nr * (x * x % p) % p)).collect();
            let mut cands = Vec::with_capacity((p * (p - 1)) as usize);
            let mut buf = vec![ZERO; p as usize];
            for k in 0..p - 1 {
                let chi = crate::field::MultChar { k };
                for x in 0..p as usize {
                    buf[x] = base[x] * ctx.eval_mult_char(chi, x as u64).conj();
                }
                dft.run(&mut buf);
                for (s, z) in buf.iter().enumerate() {
                    cands.push(NormValue { value: z.norm(), r, s: s as u64, k });
                }
            }
            best(cands)
        })
        .collect();
    best(per_r)
}

/// <f, phi chi> for a single phase, computed directly.
pub fn qm_correlation(f: &Signal, r: u64, s: u64, k: u64) -> C64 {
    let ctx = &f.ctx;
    let phase = crate::field::QuadPhase { r, s };
    let chi = crate::field::MultChar { k };
    let terms: Vec<C64> = (0..ctx.p)
        .map(|x| f.values[x as usize] * (ctx.eval_quad(phase, x) * ctx.eval_mult_char(chi, x)).conj())
        .collect();
    pairwise_sum(&terms) / ctx.p as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{MultChar, QuadPhase};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn direct_u3(f: &Signal) -> f64 {
        let p = f.p();
        let mut m = 0.0f64;
        for r in 0..p {
            for s in 0..p {
                let phi = Signal::quad_phase(&f.ctx, QuadPhase { r, s });
                m = m.max(f.inner(&phi).unwrap().norm());
            }
        }
        m
    }

    #[test]
    fn transform_examples() {
        let ctx = FieldCtx::new(11).unwrap();
        let delta = Signal::indicator_of(&ctx, &[0]);
        let d = add_transform(&delta);
        assert!(d.coeffs.iter().all(|z| (z - 1.0 / 11.0).norm() < 1e-12));
        let one = add_transform(&Signal::ones(&ctx));
        assert!((one.coeffs[0] - 1.0).norm() < 1e-12);
        assert!(one.coeffs[1..].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn fast_paths_match_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in [5u64, 13, 31, 61] {
            let ctx = FieldCtx::new(p).unwrap();
            let f = Signal::random(&ctx, &mut rng);
            let a = add_transform(&f);
            let b = add_transform_direct(&f);
            for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                assert!((x - y).norm() < 1e-12);
            }
            let m = mult_spectrum(&f);
            let md = mult_spectrum_direct(&f);
            for (x, y) in m.coeffs.iter().zip(&md.coeffs) {
                assert!((x - y).norm() < 1e-12);
            }
            let back = add_invert(&a);
            assert!(back.max_abs_diff(&add_invert_direct(&b)) < 1e-12);
        }
    }

    #[test]
    fn norm_examples() {
        let ctx = FieldCtx::new(13).unwrap();
        let one = Signal::ones(&ctx);
        for v in [norm_u2_plus(&one), norm_u2_times(&one), norm_u3_plus(&one), norm_qm(&one)] {
            assert!((v.value - 1.0).abs() < 1e-12);
            assert_eq!((v.r, v.s, v.k), (0, 0, 0));
        }
        let phi = Signal::quad_phase(&ctx, QuadPhase { r: 1, s: 0 });
        let u3 = norm_u3_plus(&phi);
        assert!((u3.value - 1.0).abs() < 1e-12);
        assert_eq!((u3.r, u3.s), (1, 0));
        assert!((norm_u2_plus(&phi).value - 1.0 / 13f64.sqrt()).abs() < 1e-12);
        let chi = Signal::mult_char(&ctx, MultChar { k: 3 });
        let u = norm_u2_times(&chi);
        assert!((u.value - 1.0).abs() < 1e-12);
        assert_eq!(u.k, 3);
        let mut v = vec![C64::new(0.0, 0.0); 13];
        v[0] = C64::new(1.0, 0.0);
        v[1] = C64::new(-1.0, 0.0);
        let w = Signal::from_values(&ctx, v).unwrap();
        assert!(norm_u2_times(&w).value < 1e-9);
    }

    #[test]
    fn u3_and_qm_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ctx = FieldCtx::new(11).unwrap();
        for _ in 0..5 {
            let f = Signal::random(&ctx, &mut rng);
            let u3 = norm_u3_plus(&f);
            assert!((u3.value - direct_u3(&f)).abs() < 1e-12);
            assert!((qm_correlation(&f, u3.r, u3.s, 0).norm() - u3.value).abs() < 1e-12);
            let qm = norm_qm(&f);
            let mut m = 0.0f64;
            for r in 0..11 {
                for s in 0..11 {
                    for k in 0..10 {
                        m = m.max(qm_correlation(&f, r, s, k).norm());
                    }
                }
            }
            assert!((qm.value - m).abs() < 1e-12);
            assert!((qm_correlation(&f, qm.r, qm.s, qm.k).norm() - qm.value).abs() < 1e-12);
        }
    }

    #[test]
    fn gauss_inner_products() {
        let p = 31;
        let ctx = FieldCtx::new(p).unwrap();
        for r1 in 0..p {
            for r2 in 0..p {
                if r1 == r2 {
                    continue;
                }
                let a = Signal::quad_phase(&ctx, QuadPhase { r: r1, s: 3 });
                let b = Signal::quad_phase(&ctx, QuadPhase { r: r2, s: 17 });
                assert!(a.inner(&b).unwrap().norm() <= 1.0 / (p as f64).sqrt() + 1e-9);
            }
        }
    }
}
