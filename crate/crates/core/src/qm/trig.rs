//! Sparse trigonometric polynomials on G^d:
//! F(theta1, theta2, z) = sum_xi c_xi e(xi1.theta1 + xi2.theta2) z^xi3.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{GPoint, QMSystem};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::numeric::{pairwise_sum, C64};
use crate::signal::Signal;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub xi1: Vec<i64>,
    pub xi2: Vec<i64>,
    pub xi3: Vec<i64>,
}

impl Mode {
    pub fn zero(d: usize) -> Mode {
        Mode { xi1: vec![0; d], xi2: vec![0; d], xi3: vec![0; d] }
    }

    pub fn l1_radius(&self) -> i64 {
        let l1 = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
        l1(&self.xi1).max(l1(&self.xi2)).max(l1(&self.xi3))
    }

    /// (xi1.t + xi2.u mod p, xi3.v mod p-1) for a point with numerators (t, u, v).
    pub fn phase(&self, g: &GPoint) -> (u64, u64) {
        let (p, q) = (g.p as i128, g.p as i128 - 1);
        let mut a = 0i128;
        let mut b = 0i128;
        for (i, c) in g.coords.iter().enumerate() {
            a += self.xi1[i] as i128 * c.t as i128 + self.xi2[i] as i128 * c.u as i128;
            b += self.xi3[i] as i128 * c.v as i128;
        }
        (a.rem_euclid(p) as u64, b.rem_euclid(q) as u64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    pub d: usize,
    pub terms: BTreeMap<Mode, C64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrigTermJson {
    pub xi1: Vec<i64>,
    pub xi2: Vec<i64>,
    pub xi3: Vec<i64>,
    pub coef: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrigPolyJson {
    pub d: usize,
    pub terms: Vec<TrigTermJson>,
}

impl TrigPoly {
    pub fn zero(d: usize) -> TrigPoly {
        TrigPoly { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: C64) -> TrigPoly {
        let mut f = TrigPoly::zero(d);
        f.add_term(Mode::zero(d), c);
        f
    }

    pub fn single(mode: Mode, c: C64) -> TrigPoly {
        let mut f = TrigPoly::zero(mode.xi1.len());
        f.add_term(mode, c);
        f
    }

    pub fn add_term(&mut self, mode: Mode, c: C64) {
        assert!(mode.xi1.len() == self.d && mode.xi2.len() == self.d && mode.xi3.len() == self.d);
        let e = self.terms.entry(mode).or_insert(C64::new(0.0, 0.0));
        *e += c;
        if e.norm() == 0.0 {
            self.terms.retain(|_, v| v.norm() != 0.0);
        }
    }

    pub fn coef(&self, mode: &Mode) -> C64 {
        self.terms.get(mode).copied().unwrap_or_default()
    }

    /// max(largest l1 radius of a frequency in the support, sum of |coefficients|).
    pub fn trig_norm(&self) -> f64 {
        let radius = self.terms.keys().map(|m| m.l1_radius()).max().unwrap_or(0) as f64;
        let mass: f64 = self.terms.values().map(|c| c.norm()).sum();
        radius.max(mass)
    }

    /// F at an exact point of a finite orbit closure.
    pub fn eval(&self, ctx: &FieldCtx, g: &GPoint) -> C64 {
        let vals: Vec<C64> = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let (a, b) = m.phase(g);
                c * ctx.e_p(a) * ctx.e_pm1(b)
            })
            .collect();
        pairwise_sum(&vals)
    }

    /// F at a real point: one (theta1, theta2, arg z/2pi) triple per dimension.
    pub fn eval_real(&self, x: &[[f64; 3]]) -> C64 {
        let vals: Vec<C64> = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut ph = 0.0;
                for (i, xi) in x.iter().enumerate() {
                    ph += m.xi1[i] as f64 * xi[0] + m.xi2[i] as f64 * xi[1] + m.xi3[i] as f64 * xi[2];
                }
                c * C64::from_polar(1.0, TAU * ph.fract())
            })
            .collect();
        pairwise_sum(&vals)
    }

    /// x -> F(Psi(x)).
    pub fn compose(&self, psi: &QMSystem) -> Signal {
        assert_eq!(self.d, psi.d());
        Signal::from_fn(&psi.ctx, |x| self.eval(&psi.ctx, &psi.eval(x)))
    }

    /// T_h F(g) = F(h^{-1} g): each coefficient picks up the phase conj(chi_xi(h)).
    pub fn shifted(&self, ctx: &FieldCtx, h: &GPoint) -> TrigPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let (a, b) = m.phase(h);
                (m.clone(), c * (ctx.e_p(a) * ctx.e_pm1(b)).conj())
            })
            .collect();
        TrigPoly { d: self.d, terms }
    }

    pub fn to_json(&self) -> TrigPolyJson {
        TrigPolyJson {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TrigTermJson { xi1: m.xi1.clone(), xi2: m.xi2.clone(), xi3: m.xi3.clone(), coef: [c.re, c.im] })
                .collect(),
        }
    }

    pub fn from_json(j: &TrigPolyJson) -> Result<TrigPoly> {
        let mut f = TrigPoly::zero(j.d);
        for t in &j.terms {
            if t.xi1.len() != j.d || t.xi2.len() != j.d || t.xi3.len() != j.d {
                return Err(Error::Invalid(format!("term frequency length differs from d = {}", j.d)));
            }
            f.add_term(Mode { xi1: t.xi1.clone(), xi2: t.xi2.clone(), xi3: t.xi3.clone() }, C64::new(t.coef[0], t.coef[1]));
        }
        Ok(f)
    }

    /// A random polynomial with `terms` modes, entries of each frequency in
    /// [-max_freq, max_freq], scaled so that the coefficient mass is `mass`.
    pub fn random<R: rand::Rng>(rng: &mut R, d: usize, terms: usize, max_freq: i64, mass: f64) -> TrigPoly {
        let mut f = TrigPoly::zero(d);
        let draw = |rng: &mut R| (0..d).map(|_| rng.gen_range(-max_freq..=max_freq)).collect::<Vec<i64>>();
        for _ in 0..terms {
            let m = Mode { xi1: draw(rng), xi2: draw(rng), xi3: draw(rng) };
            let c = C64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..TAU));
            f.add_term(m, c);
        }
        let total: f64 = f.terms.values().map(|c| c.norm()).sum();
        if total > 0.0 {
            for c in f.terms.values_mut() {
                *c *= mass / total;
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qm::HGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn norm_examples() {
        let one = TrigPoly::constant(2, C64::new(1.0, 0.0));
        assert_eq!(one.trig_norm(), 1.0);
        let m = Mode { xi1: vec![2, -1], xi2: vec![0, 0], xi3: vec![0, 0] };
        assert_eq!(TrigPoly::single(m, C64::new(1.0, 0.0)).trig_norm(), 3.0);
    }

    #[test]
    fn exact_and_real_evaluation_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ctx = FieldCtx::new(13).unwrap();
        let psi = QMSystem::new(&ctx, &[(2, 3), (5, 1)]);
        let f = TrigPoly::random(&mut rng, 2, 6, 3, 2.0);
        for x in 0..13 {
            let g = psi.eval(x);
            assert!((f.eval(&ctx, &g) - f.eval_real(&g.to_real())).norm() < 1e-12);
        }
        let one = TrigPoly::constant(2, C64::new(1.0, 0.0));
        assert!(one.compose(&psi).values.iter().all(|z| (z - 1.0).norm() < 1e-15));
    }

    #[test]
    fn shift_preserves_norm_and_translates() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ctx = FieldCtx::new(11).unwrap();
        let psi = QMSystem::new(&ctx, &[(3, 4)]);
        let h = HGroup::of(&psi);
        let f = TrigPoly::random(&mut rng, 1, 5, 2, 1.5);
        let shift = h.element(3, 7, 2);
        let g = f.shifted(&ctx, &shift);
        assert!((g.trig_norm() - f.trig_norm()).abs() < 1e-12);
        for y in h.elements().step_by(13) {
            let lhs = g.eval(&ctx, &y);
            let rhs = f.eval(&ctx, &shift.inverse().op(&y));
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = TrigPoly::random(&mut rng, 2, 4, 2, 1.0);
        let s = serde_json::to_string(&f.to_json()).unwrap();
        let g = TrigPoly::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(f, g);
    }
}
