//! Equidistribution of QM orbits: the baby counting lemma and the counting
//! lemma with its integral I(F), each with an enumeration oracle over H.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{HGroup, QMSystem, TrigPoly};
use crate::counting::t_op;
use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, C64};
use crate::report::MarginReport;
use crate::signal::Signal;

pub const MAX_H_ENUM: u64 = 10_000_000;
pub const MAX_H2_ENUM: u64 = 100_000_000;
pub const MAX_I_DIM: usize = 4;
pub const MAX_I_TRIG_NORM: f64 = 10.0;
pub const MAX_I_TRIPLES: u64 = 1_000_000_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BabyCount {
    /// E_x F(Psi(x))
    pub lhs: C64,
    /// sum of F^(xi) over xi1, xi2 in Lambda+ and xi3 in Lambdax
    pub rhs_lattice: C64,
    /// average of F over the enumerated group H, when |H| <= 10^7
    pub rhs_enum: Option<C64>,
    pub margin: f64,
}

/// Residues (xi1.a mod p, xi2.a mod p, xi3.k mod p-1) of each mode, so that
/// F at the element with parameters (s1, s2, s3) is
/// sum c e_p(s1 A1 + s2 A2) e((s3 B3)/(p-1)).
fn mode_residues(psi: &QMSystem, f: &TrigPoly) -> Vec<(u64, u64, u64, C64)> {
    let (p, q) = (psi.p() as i128, psi.p() as i128 - 1);
    let dot = |xi: &[i64], w: &dyn Fn(usize) -> u64, m: i128| -> u64 {
        xi.iter().enumerate().map(|(i, &x)| x as i128 * w(i) as i128).sum::<i128>().rem_euclid(m) as u64
    };
    f.terms
        .iter()
        .map(|(m, &c)| {
            (
                dot(&m.xi1, &|i| psi.dims[i].a, p),
                dot(&m.xi2, &|i| psi.dims[i].a, p),
                dot(&m.xi3, &|i| psi.dims[i].k, q),
                c,
            )
        })
        .collect()
}

/// Values of F on H, indexed by (s1 n_plus + s2) n_times + s3.
fn table_on_h(psi: &QMSystem, h: &HGroup, f: &TrigPoly) -> Vec<C64> {
    let ctx = &psi.ctx;
    let res = mode_residues(psi, f);
    h.params()
        .map(|(s1, s2, s3)| {
            let vals: Vec<C64> =
                res.iter().map(|&(a1, a2, b3, c)| c * ctx.e_p(s1 * a1 + s2 * a2) * ctx.e_pm1(s3 * b3)).collect();
            pairwise_sum(&vals)
        })
        .collect()
}

pub fn baby_count(psi: &QMSystem, f: &TrigPoly) -> BabyCount {
    assert_eq!(psi.d(), f.d);
    let lhs = f.compose(psi).mean();
    let on_lattice: Vec<C64> = f
        .terms
        .iter()
        .filter(|(m, _)| psi.in_lambda_plus(&m.xi1) && psi.in_lambda_plus(&m.xi2) && psi.in_lambda_times(&m.xi3))
        .map(|(_, &c)| c)
        .collect();
    let rhs_lattice = pairwise_sum(&on_lattice);
    let h = HGroup::of(psi);
    let rhs_enum = (h.order() <= MAX_H_ENUM).then(|| {
        let t = table_on_h(psi, &h, f);
        pairwise_sum(&t) / h.order() as f64
    });
    BabyCount { lhs, rhs_lattice, rhs_enum, margin: (lhs - rhs_lattice).norm() }
}

/// I(F): the sum of F^(m1) F^(m2) F^(m3) over mode triples with
/// xi1+xi4, xi7, xi2+xi5, xi4+xi8 in Lambda+ and xi3+xi9, xi6 in Lambdax,
/// where m1 = (xi1, xi2, xi3), m2 = (xi4, xi5, xi6), m3 = (xi7, xi8, xi9).
pub fn counting_integral_i(psi: &QMSystem, f: &TrigPoly) -> Result<C64> {
    if f.d > MAX_I_DIM {
        return Err(Error::Budget(format!("I(F) supports d <= {MAX_I_DIM}, got {}", f.d)));
    }
    if f.trig_norm() > MAX_I_TRIG_NORM {
        return Err(Error::Budget(format!("I(F) supports trig norm <= {MAX_I_TRIG_NORM}, got {}", f.trig_norm())));
    }
    let n = f.terms.len() as u64;
    if n.saturating_pow(3) > MAX_I_TRIPLES {
        return Err(Error::Budget(format!("{n} modes give more than {MAX_I_TRIPLES} triples")));
    }
    let (p, q) = (psi.p(), psi.p() - 1);
    let res = mode_residues(psi, f);
    let mut terms = Vec::new();
    for &(a1, a2, b3, c1) in &res {
        for &(a4, a5, b6, c2) in &res {
            if b6 != 0 || (a1 + a4) % p != 0 || (a2 + a5) % p != 0 {
                continue;
            }
            for &(a7, a8, b9, c3) in &res {
                if a7 == 0 && (a4 + a8) % p == 0 && (b3 + b9) % q == 0 {
                    terms.push(c1 * c2 * c3);
                }
            }
        }
    }
    Ok(pairwise_sum(&terms))
}

/// E over (t,u,v), (t',u',v') in H of F(t,u,v) F(t+u',u,v') F(t',u',v), by enumeration.
pub fn counting_integral_enum(psi: &QMSystem, f: &TrigPoly) -> Result<C64> {
    let h = HGroup::of(psi);
    let order = h.order();
    if order.saturating_mul(order) > MAX_H2_ENUM {
        return Err(Error::Budget(format!("|H|^2 = {} exceeds {MAX_H2_ENUM}", order as u128 * order as u128)));
    }
    let table = table_on_h(psi, &h, f);
    let (n1, n3) = (h.n_plus as usize, h.n_times as usize);
    let idx = |s1: usize, s2: usize, s3: usize| (s1 * n1 + s2) * n3 + s3;
    let mut rows = Vec::with_capacity(n1 * n1 * n3);
    for s1 in 0..n1 {
        for s2 in 0..n1 {
            for s3 in 0..n3 {
                let first = table[idx(s1, s2, s3)];
                let mut acc = Vec::with_capacity(n1 * n1 * n3);
                for t1 in 0..n1 {
                    for t2 in 0..n1 {
                        let third = table[idx(t1, t2, s3)];
                        for t3 in 0..n3 {
                            acc.push(table[idx((s1 + t2) % n1, s2, t3)] * third);
                        }
                    }
                }
                rows.push(first * pairwise_sum(&acc));
            }
        }
    }
    Ok(pairwise_sum(&rows) / (order as f64 * order as f64))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountingLemmaReport {
    /// T(F o Psi, 1_S, F o Psi, F o Psi)
    pub t: C64,
    pub mu_s: f64,
    pub integral: C64,
    /// |T - mu(S) I(F)|
    pub margin: f64,
    pub trig_norm: f64,
    /// eps mu(S) M^4
    pub eps_term: f64,
    /// M^{9d} / sqrt(p)
    pub p_term: f64,
}

impl CountingLemmaReport {
    pub fn budget(&self, c: f64) -> MarginReport {
        MarginReport::new("counting lemma", self.margin, c * (self.eps_term + self.p_term))
    }
}

pub fn counting_lemma_check(psi: &QMSystem, f: &TrigPoly, s: &[u64], eps: Rational64) -> Result<CountingLemmaReport> {
    let ctx = &psi.ctx;
    if let Some(&y) = s.iter().find(|&&y| !psi.eval(y).within(eps)) {
        return Err(Error::Precondition(format!("{y} is in S but not in B(Psi, {eps})")));
    }
    let g = f.compose(psi);
    let ind = Signal::indicator_of(ctx, s);
    let t = t_op(&g, &ind, &g, &g)?;
    let mu_s = ind.mean().re;
    let integral = counting_integral_i(psi, f)?;
    let m = f.trig_norm();
    let e = *eps.numer() as f64 / *eps.denom() as f64;
    Ok(CountingLemmaReport {
        t,
        mu_s,
        integral,
        margin: (t - integral * mu_s).norm(),
        trig_norm: m,
        eps_term: e * mu_s * m.powi(4),
        p_term: m.powi(9 * psi.d() as i32) / (psi.p() as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::qm::{GPoint, Mode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_polynomial() {
        let ctx = FieldCtx::new(7).unwrap();
        let psi = QMSystem::new(&ctx, &[(1, 2)]);
        let one = TrigPoly::constant(1, C64::new(1.0, 0.0));
        let b = baby_count(&psi, &one);
        assert!((b.lhs - 1.0).norm() < 1e-12 && b.margin < 1e-12);
        assert!((counting_integral_i(&psi, &one).unwrap() - 1.0).norm() < 1e-12);
        assert!((counting_integral_enum(&psi, &one).unwrap() - 1.0).norm() < 1e-12);
        let s = psi.bohr_set(Rational64::new(1, 3));
        let r = counting_lemma_check(&psi, &one, &s, Rational64::new(1, 3)).unwrap();
        assert!((r.t.re - s.len() as f64 / 7.0).abs() < 1e-12 && r.margin < 1e-12);
    }

    #[test]
    fn lattice_and_enumeration_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (p, dims) in [(5u64, vec![(1u64, 1u64)]), (7, vec![(2, 3)]), (11, vec![(1, 2), (3, 5)]), (7, vec![(0, 3)])] {
            let ctx = FieldCtx::new(p).unwrap();
            let psi = QMSystem::new(&ctx, &dims);
            for _ in 0..4 {
                let f = TrigPoly::random(&mut rng, dims.len(), 6, (p as i64) - 1, 3.0);
                let b = baby_count(&psi, &f);
                assert!((b.rhs_enum.unwrap() - b.rhs_lattice).norm() < 1e-9);
                if dims.len() == 1 {
                    let i1 = counting_integral_i(&psi, &f).unwrap();
                    let i2 = counting_integral_enum(&psi, &f).unwrap();
                    assert!((i1 - i2).norm() < 1e-9, "{i1} vs {i2}");
                }
            }
        }
    }

    #[test]
    fn on_lattice_mode_is_identically_one() {
        let ctx = FieldCtx::new(13).unwrap();
        let psi = QMSystem::new(&ctx, &[(1, 4), (2, 6)]);
        // (2,-1).a = 0 mod 13, (3,-2).k = 12 - 12 = 0 mod 12
        let m = Mode { xi1: vec![2, -1], xi2: vec![-2, 1], xi3: vec![3, -2] };
        assert!(psi.in_lambda_plus(&m.xi1) && psi.in_lambda_times(&m.xi3));
        let f = TrigPoly::single(m, C64::new(1.0, 0.0));
        let g = f.compose(&psi);
        assert!(g.values.iter().all(|z| (z - 1.0).norm() < 1e-12));
        assert!((baby_count(&psi, &f).lhs - 1.0).norm() < 1e-12);
    }

    #[test]
    fn singleton_s_slice() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let ctx = FieldCtx::new(31).unwrap();
        let psi = QMSystem::new(&ctx, &[(1, 1)]);
        let f = TrigPoly::random(&mut rng, 1, 3, 1, 1.0);
        let r = counting_lemma_check(&psi, &f, &[0], Rational64::new(1, 10)).unwrap();
        let g = f.compose(&psi);
        let direct: C64 = (0..31u64).map(|x| g.at(x) * g.at(x) * g.at(0)).sum::<C64>() / (31.0 * 31.0);
        assert!((r.t - direct).norm() < 1e-12);
        let _ = GPoint::identity(31, 1);
        assert!(counting_lemma_check(&psi, &f, &[5], Rational64::new(1, 10)).is_err());
    }

    #[test]
    fn budgets_are_enforced() {
        let ctx = FieldCtx::new(5).unwrap();
        let psi = QMSystem::new(&ctx, &[(1, 1); 5]);
        let f = TrigPoly::constant(5, C64::new(1.0, 0.0));
        assert!(matches!(counting_integral_i(&psi, &f), Err(Error::Budget(_))));
    }
}
