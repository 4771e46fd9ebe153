//! Trigonometric majorants F of generalised-interval boxes I_{R;t,u,v}:
//!
//! 1. 0 <= F <= 1 + eps/(10 R^{3d});
//! 2. F >= 1 on the box;
//! 3. F <= eps/(10 R^{3d}) off the eta-enlargement of the box;
//! 4. finite trig norm, bounded by an explicit M0(eps, d, R).
//!
//! F is a product of 3d one-dimensional factors
//! h = (K_n * 1_J') / (1 - tau), where K_n(s) = cos^{2n}(pi s) / mean is a
//! Fejer-type kernel, J' is the interval widened by eta/2 on each side, and
//! tau is the mass of K_n outside [-eta/2, eta/2]. Then h >= 1 on the
//! interval, h <= 1/(1-tau) everywhere and h <= tau/(1-tau) at distance
//! >= eta from it.

use std::f64::consts::{PI, SQRT_2, TAU};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::ShiftedFrac;
use crate::error::{pre, Error, Result};
use crate::numeric::{pairwise_sum_real, C64};
use crate::qm::{Mode, QMSystem, TrigPoly};
use crate::signal::Signal;

const MAX_DEGREE: usize = 1 << 20;
const MAX_GRID_POINTS: u64 = 4_000_000;
const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SmoothBox {
    pub d: usize,
    pub r: u64,
    /// (t_1, u_1, v_1, ..., t_d, u_d, v_d)
    pub key: Vec<u16>,
    pub eps: f64,
    pub eta: Rational64,
    pub degree: usize,
    pub tail: f64,
    /// h(theta) = b_0 + 2 sum_{j=1..n} b_j cos(2 pi j (theta - c))
    pub profile: Vec<f64>,
    /// c = (2 t + 1)/(2R) + sqrt2 per factor
    pub centers: Vec<f64>,
    /// 1 + eps/(10 R^{3d})
    pub upper: f64,
    /// eps/(10 R^{3d})
    pub off: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SmoothReport {
    pub points: usize,
    pub in_box: usize,
    pub off_enlarged: usize,
    pub min_value: f64,
    pub max_value: f64,
    pub min_in_box: f64,
    pub max_off: f64,
    pub violations: usize,
}

impl SmoothReport {
    fn new() -> SmoothReport {
        SmoothReport {
            min_value: f64::INFINITY,
            max_value: f64::NEG_INFINITY,
            min_in_box: f64::INFINITY,
            max_off: f64::NEG_INFINITY,
            ..Default::default()
        }
    }

    fn record(&mut self, sb: &SmoothBox, v: f64, in_box: bool, in_enl: bool) {
        self.points += 1;
        self.min_value = self.min_value.min(v);
        self.max_value = self.max_value.max(v);
        let mut bad = v < -TOL || v > sb.upper + TOL;
        if in_box {
            self.in_box += 1;
            self.min_in_box = self.min_in_box.min(v);
            bad |= v < 1.0 - TOL;
        }
        if !in_enl {
            self.off_enlarged += 1;
            self.max_off = self.max_off.max(v);
            bad |= v > sb.off + TOL;
        }
        if bad {
            self.violations += 1;
        }
    }
}

/// Mass of K_n outside [-eta/2, eta/2].
fn kernel_tail(n: usize, eta: f64) -> f64 {
    let kappa = kernel_coefs(n);
    let terms: Vec<f64> = (1..=n).map(|j| 2.0 * kappa[j] * (PI * j as f64 * eta).sin() / (PI * j as f64)).collect();
    (1.0 - eta - pairwise_sum_real(&terms)).max(0.0)
}

/// kappa_j = C(2n, n+j) / C(2n, n), the Fourier coefficients of K_n.
fn kernel_coefs(n: usize) -> Vec<f64> {
    let mut k = vec![1.0; n + 1];
    for j in 0..n {
        k[j + 1] = k[j] * (n - j) as f64 / (n + j + 1) as f64;
    }
    k
}

fn smallest_degree(eta: f64, target: f64) -> Result<usize> {
    if kernel_tail(1, eta) <= target {
        return Ok(1);
    }
    let mut hi = 2;
    while kernel_tail(hi, eta) > target {
        hi *= 2;
        if hi > MAX_DEGREE {
            return Err(Error::Budget(format!("kernel degree above {MAX_DEGREE} needed for tail {target:e}")));
        }
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if kernel_tail(mid, eta) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// smooth_box_approx_with eta = 1/(4R), verified on a grid of 10 points per axis.
pub fn smooth_box_approx(d: usize, r: u64, key: &[u16], eps: f64) -> Result<SmoothBox> {
    smooth_box_approx_with(d, r, key, eps, Rational64::new(1, 4 * r as i64), 10)
}

pub fn smooth_box_approx_with(d: usize, r: u64, key: &[u16], eps: f64, eta: Rational64, grid: u64) -> Result<SmoothBox> {
    pre(r.is_power_of_two() && r <= super::MAX_RESOLUTION, || format!("resolution {r} must be a power of two at most 2^10"))?;
    pre(key.len() == 3 * d, || format!("box key has {} entries, expected {}", key.len(), 3 * d))?;
    pre(key.iter().all(|&k| (k as u64) < r), || "box index out of range".into())?;
    pre(eps > 0.0 && eps <= 1.0, || format!("eps = {eps} outside (0, 1]"))?;
    pre(eta > Rational64::from_integer(0), || "eta must be positive".into())?;
    let vol = (r as f64).powi(3 * d as i32);
    let off = eps / (10.0 * vol);
    let upper = 1.0 + off;
    let etaf = *eta.numer() as f64 / *eta.denom() as f64;
    let half = 1.0 / (2.0 * r as f64) + etaf / 2.0;
    let centers: Vec<f64> = key.iter().map(|&k| (2.0 * k as f64 + 1.0) / (2.0 * r as f64) + SQRT_2).collect();
    let base = SmoothBox {
        d,
        r,
        key: key.to_vec(),
        eps,
        eta,
        degree: 0,
        tail: 0.0,
        profile: vec![1.0],
        centers,
        upper,
        off,
    };
    if d == 0 || 2.0 * half >= 1.0 {
        // the enlarged box is everything, so F = 1 meets all four properties
        return Ok(base);
    }
    // (1 + tau')^{3d} <= 1 + off with tau' = tau/(1 - tau) covers both the
    // upper bound and tau' (1 + tau')^{3d-1} <= off.
    let tau_p = (1.0 + off).powf(1.0 / (3 * d) as f64) - 1.0;
    let target = tau_p / (1.0 + tau_p);
    let mut n = smallest_degree(etaf, target)?;
    for attempt in 0..2 {
        let sb = build(&base, n, etaf, half);
        let rep = sb.verify_grid(grid);
        if rep.violations == 0 {
            return Ok(sb);
        }
        if attempt == 1 {
            return Err(Error::BoundViolated(format!("smooth box fails {} grid checks at degree {n}", rep.violations)));
        }
        n *= 2;
    }
    unreachable!()
}

fn build(base: &SmoothBox, n: usize, eta: f64, half: f64) -> SmoothBox {
    let tail = kernel_tail(n, eta);
    let kappa = kernel_coefs(n);
    let scale = 1.0 / (1.0 - tail);
    let profile = (0..=n)
        .map(|j| {
            let s = if j == 0 { 2.0 * half } else { (TAU * j as f64 * half).sin() / (PI * j as f64) };
            scale * kappa[j] * s
        })
        .collect();
    SmoothBox { degree: n, tail, profile, ..base.clone() }
}

impl SmoothBox {
    pub fn factor(&self, i: usize, theta: f64) -> f64 {
        let c = self.centers[i];
        let terms: Vec<f64> =
            (1..self.profile.len()).map(|j| 2.0 * self.profile[j] * (TAU * j as f64 * (theta - c)).cos()).collect();
        self.profile[0] + pairwise_sum_real(&terms)
    }

    pub fn eval_real(&self, x: &[[f64; 3]]) -> f64 {
        x.iter().flatten().enumerate().map(|(i, &th)| self.factor(i, th)).product()
    }

    pub fn compose(&self, psi: &QMSystem) -> Signal {
        assert_eq!(psi.d(), self.d);
        Signal::from_fn(&psi.ctx, |x| C64::new(self.eval_real(&psi.eval(x).to_real()), 0.0))
    }

    /// Sum of |coefficients| of one factor.
    fn factor_mass(&self) -> f64 {
        self.profile[0].abs() + 2.0 * self.profile[1..].iter().map(|b| b.abs()).sum::<f64>()
    }

    /// max(d n, product of factor masses): the trig norm of the expanded product.
    pub fn trig_norm(&self) -> f64 {
        let mass = self.factor_mass().powi(3 * self.d as i32);
        (self.d as f64 * self.degree as f64).max(mass)
    }

    /// M0(eps, d, R) for this construction:
    /// max(d n, ((2w' + (2/pi)(1 + ln n)) / (1 - tau))^{3d}), w' = 1/(2R) + eta/2.
    pub fn m0_bound(&self) -> f64 {
        if self.degree == 0 {
            return 1.0;
        }
        let etaf = *self.eta.numer() as f64 / *self.eta.denom() as f64;
        let w = 1.0 / (2.0 * self.r as f64) + etaf / 2.0;
        let per = (2.0 * w + (2.0 / PI) * (1.0 + (self.degree as f64).ln())) / (1.0 - self.tail);
        (self.d as f64 * self.degree as f64).max(per.powi(3 * self.d as i32))
    }

    /// The expanded polynomial, when it has at most `max_terms` modes.
    pub fn to_trig_poly(&self, max_terms: usize) -> Result<TrigPoly> {
        let n = self.degree as i64;
        let count = ((2 * n + 1) as f64).powi(3 * self.d as i32);
        if count > max_terms as f64 {
            return Err(Error::Budget(format!("{count} modes exceeds {max_terms}")));
        }
        let mut out = TrigPoly::constant(self.d, C64::new(1.0, 0.0));
        for (i, &c) in self.centers.iter().enumerate() {
            let mut next = TrigPoly::zero(self.d);
            for (m, &a) in &out.terms {
                for j in -n..=n {
                    let b = self.profile[j.unsigned_abs() as usize] * C64::from_polar(1.0, -TAU * j as f64 * c);
                    let mut mode = m.clone();
                    slot(&mut mode, i)[i / 3] += j;
                    next.add_term(mode, a * b);
                }
            }
            out = next;
        }
        Ok(out)
    }

    fn classify(&self, i: usize, n: u64, q: u64) -> (bool, bool) {
        let w = ShiftedFrac::new(n, q);
        let t = self.key[i] as i128;
        let r = self.r as i128;
        let (en, ed) = (*self.eta.numer() as i128, *self.eta.denom() as i128);
        let b = r * ed;
        (w.index(self.r) as i128 == t, w.in_open_arc(t * ed - en * r, (t + 1) * ed + en * r, b))
    }

    /// Checks the three pointwise properties on the grid {0, 1/m, ..., (m-1)/m}^{3d},
    /// coarsened if it would exceed four million points.
    pub fn verify_grid(&self, m: u64) -> SmoothReport {
        let k = 3 * self.d;
        let mut m = m.max(1);
        while k > 0 && (m as f64).powi(k as i32) > MAX_GRID_POINTS as f64 {
            m -= 1;
        }
        let table: Vec<Vec<(f64, bool, bool)>> = (0..k)
            .map(|i| {
                (0..m)
                    .map(|g| {
                        let (inb, ine) = self.classify(i, g, m);
                        (self.factor(i, g as f64 / m as f64), inb, ine)
                    })
                    .collect()
            })
            .collect();
        let mut rep = SmoothReport::new();
        let total = m.pow(k as u32);
        for idx in 0..total {
            let (mut v, mut inb, mut ine) = (1.0, true, true);
            let mut rest = idx;
            for row in &table {
                let (h, b, e) = row[(rest % m) as usize];
                rest /= m;
                v *= h;
                inb &= b;
                ine &= e;
            }
            rep.record(self, v, inb, ine);
        }
        rep
    }

    /// Checks the pointwise properties at every orbit point Psi(x).
    pub fn verify_orbit(&self, psi: &QMSystem) -> SmoothReport {
        assert_eq!(psi.d(), self.d);
        let (p, q) = (psi.p(), psi.p() - 1);
        let mut rep = SmoothReport::new();
        for x in 0..p {
            let g = psi.eval(x);
            let (mut v, mut inb, mut ine) = (1.0, true, true);
            for (j, c) in g.coords.iter().enumerate() {
                for (s, (num, den)) in [(c.t, p), (c.u, p), (c.v, q)].into_iter().enumerate() {
                    let i = 3 * j + s;
                    let (b, e) = self.classify(i, num, den);
                    v *= self.factor(i, num as f64 / den as f64);
                    inb &= b;
                    ine &= e;
                }
            }
            rep.record(self, v, inb, ine);
        }
        rep
    }
}

fn slot(mode: &mut Mode, i: usize) -> &mut Vec<i64> {
    match i % 3 {
        0 => &mut mode.xi1,
        1 => &mut mode.xi2,
        _ => &mut mode.xi3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::regularity::{build_atoms, project};

    #[test]
    fn kernel_coefficients_match_binomials() {
        // n = 3: C(6,3..6)/C(6,3) = 20, 15, 6, 1 over 20
        let k = kernel_coefs(3);
        let want = [1.0, 0.75, 0.3, 0.05];
        assert!(k.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
    }

    #[test]
    fn tail_matches_quadrature() {
        // midpoint rule on cos^{2n}(pi s)/mean over [eta/2, 1/2], doubled
        for (n, eta) in [(5usize, 0.25), (40, 0.125), (200, 0.05)] {
            let steps = 200_000;
            let (a, b) = (eta / 2.0, 0.5);
            let hstep = (b - a) / steps as f64;
            let mut c2n = 1.0f64; // C(2n, n) / 4^n
            for i in 0..n {
                c2n *= (2 * i + 1) as f64 / (2 * i + 2) as f64;
            }
            let integral: f64 =
                (0..steps).map(|i| (PI * (a + (i as f64 + 0.5) * hstep)).cos().powi(2 * n as i32) * hstep).sum();
            let quad = 2.0 * integral / c2n;
            assert!((kernel_tail(n, eta) - quad).abs() < 1e-9, "n={n}: {} vs {quad}", kernel_tail(n, eta));
        }
    }

    #[test]
    fn dimension_zero_is_constant_one() {
        let sb = smooth_box_approx(0, 4, &[], 0.5).unwrap();
        assert_eq!(sb.degree, 0);
        assert_eq!(sb.eval_real(&[]), 1.0);
        assert_eq!(sb.trig_norm(), 1.0);
    }

    #[test]
    fn r2_d1_grid_audit() {
        let sb = smooth_box_approx(1, 2, &[1, 0, 1], 0.5).unwrap();
        let rep = sb.verify_grid(10);
        assert_eq!(rep.points, 1000);
        assert_eq!(rep.violations, 0);
        assert!(rep.in_box > 0 && rep.off_enlarged > 0);
        assert!(sb.trig_norm() <= sb.m0_bound());
        assert!(sb.trig_norm().is_finite());
    }

    #[test]
    fn expanded_polynomial_agrees() {
        let sb = smooth_box_approx_with(1, 2, &[0, 1, 1], 1.0, Rational64::new(1, 3), 10).unwrap();
        let poly = sb.to_trig_poly(10_000_000).unwrap();
        assert!((poly.trig_norm() - sb.trig_norm()).abs() < 1e-9 * sb.trig_norm());
        for pt in [[0.1, 0.7, 0.3], [0.95, 0.2, 0.41], [0.5, 0.5, 0.5]] {
            let a = poly.eval_real(&[pt]);
            assert!((a.re - sb.eval_real(&[pt])).abs() < 1e-9 && a.im.abs() < 1e-9);
        }
    }

    #[test]
    fn dominates_atom_indicators_on_orbit() {
        let ctx = FieldCtx::new(31).unwrap();
        let psi = QMSystem::new(&ctx, &[(3, 4)]);
        let atoms = build_atoms(&psi, 2).unwrap();
        for (key, xs) in atoms.keys.iter().zip(&atoms.members) {
            let sb = smooth_box_approx(1, 2, key, 0.5).unwrap();
            let rep = sb.verify_orbit(&psi);
            assert_eq!(rep.violations, 0);
            assert_eq!(rep.in_box, xs.len());
            let ind = Signal::indicator_of(&ctx, xs);
            let pind = project(&atoms, &ind).unwrap();
            let f = sb.compose(&psi);
            assert!(f.values.iter().zip(&pind.values).all(|(a, b)| a.re >= b.re - 1e-12));
        }
    }
}
