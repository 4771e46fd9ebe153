//! f = sum_{phi in I} lambda_phi phi + g, where I collects every quadratic
//! phase phi(x) = e_p(r x^2 + s x) with |<f, phi>| >= eps/2 and
//! lambda_phi = <f, phi>.

use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::field::QuadPhase;
use crate::harmonic::{norm_u3_plus, quad_correlations, NormValue};
use crate::numeric::{C64, ZERO};
use crate::report::MarginReport;
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadTerm {
    pub r: u64,
    pub s: u64,
    pub lambda: C64,
}

#[derive(Debug, Clone)]
pub struct QuadDecomposition {
    pub eps: f64,
    pub terms: Vec<QuadTerm>,
    /// sum of lambda_phi phi
    pub structured: Signal,
    /// g = f - structured
    pub residual: Signal,
    pub residual_u3: NormValue,
    /// ||structured||_2^2
    pub energy: f64,
    /// sum of |lambda_phi|
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub r: u64,
    pub s: u64,
    pub lambda: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub eps: f64,
    pub terms: Vec<TermJson>,
    pub residual_u3: f64,
}

const TOL: f64 = 1e-12;

/// The decomposition for eps >= 4 p^{-1/8}, the range in which the support
/// bound |I| <= 8/eps^2 <= p^{1/4} is guaranteed.
pub fn quad_decompose(f: &Signal, eps: f64) -> Result<QuadDecomposition> {
    let floor = 4.0 * (f.p() as f64).powf(-0.125);
    pre(eps >= floor, || format!("eps = {eps} below 4 p^(-1/8) = {floor:.4} for p = {}", f.p()))?;
    quad_decompose_audited(f, eps)
}

/// The same construction for any eps in (0, 1]. The four conclusions
/// (residual u3 norm <= eps, energy <= 3, mass <= 4/eps, |I| <= 8/eps^2) are
/// still checked and a failure is returned as `BoundViolated`.
pub fn quad_decompose_audited(f: &Signal, eps: f64) -> Result<QuadDecomposition> {
    let out = quad_decompose_unchecked(f, eps)?;
    let failed: Vec<String> = out.conclusions().into_iter().filter(|m| !m.holds(TOL)).map(|m| format!("{} = {} > {}", m.name, m.lhs, m.rhs)).collect();
    if !failed.is_empty() {
        return Err(Error::BoundViolated(format!("p = {}: {}", f.p(), failed.join("; "))));
    }
    Ok(out)
}

/// The construction alone, with no conclusion asserted.
pub fn quad_decompose_unchecked(f: &Signal, eps: f64) -> Result<QuadDecomposition> {
    pre(eps > 0.0 && eps <= 1.0, || format!("eps = {eps} outside (0, 1]"))?;
    pre(f.l2() <= 1.0 + TOL, || format!("||f||_2 = {} exceeds 1", f.l2()))?;
    let ctx = &f.ctx;
    let table = quad_correlations(f);
    let mut terms = Vec::new();
    for (r, row) in table.iter().enumerate() {
        for (s, &z) in row.iter().enumerate() {
            if z.norm() >= eps / 2.0 {
                terms.push(QuadTerm { r: r as u64, s: s as u64, lambda: z });
            }
        }
    }
    let structured = Signal::from_fn(ctx, |x| {
        let mut acc = ZERO;
        for t in &terms {
            acc += t.lambda * ctx.eval_quad(QuadPhase { r: t.r, s: t.s }, x);
        }
        acc
    });
    let residual = f.sub(&structured)?;
    let residual_u3 = norm_u3_plus(&residual);
    let energy = structured.l2_sq();
    let mass: f64 = terms.iter().map(|t| t.lambda.norm()).sum();
    Ok(QuadDecomposition { eps, terms, structured, residual, residual_u3, energy, mass })
}

impl QuadDecomposition {
    /// residual u3 norm <= eps, energy <= 3, mass <= 4/eps and |I| <= 8/eps^2.
    pub fn conclusions(&self) -> [MarginReport; 4] {
        let eps = self.eps;
        [
            MarginReport::new("residual u3+ norm", self.residual_u3.value, eps),
            MarginReport::new("energy", self.energy, 3.0),
            MarginReport::new("mass", self.mass, 4.0 / eps),
            MarginReport::new("|I|", self.terms.len() as f64, 8.0 / (eps * eps)),
        ]
    }

    /// The two estimates that hold for every p: sum |lambda|^2 <= 1 + |I|^2/sqrt p
    /// and energy <= sum |lambda|^2 + |I|^2/sqrt p.
    pub fn proof_inequalities(&self) -> [MarginReport; 2] {
        let sq: f64 = self.terms.iter().map(|t| t.lambda.norm_sqr()).sum();
        let n = self.terms.len() as f64;
        let cross = n * n / (self.structured.p() as f64).sqrt();
        [MarginReport::new("sum |lambda|^2", sq, 1.0 + cross), MarginReport::new("energy", self.energy, sq + cross)]
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            eps: self.eps,
            terms: self.terms.iter().map(|t| TermJson { r: t.r, s: t.s, lambda: [t.lambda.re, t.lambda.im] }).collect(),
            residual_u3: self.residual_u3.value,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_phase_is_recovered() {
        let ctx = FieldCtx::new(31).unwrap();
        let phi = QuadPhase { r: 3, s: 5 };
        let f = Signal::quad_phase(&ctx, phi);
        let dec = quad_decompose_audited(&f, 0.5).unwrap();
        assert_eq!(dec.terms.len(), 1);
        assert_eq!((dec.terms[0].r, dec.terms[0].s), (3, 5));
        assert!((dec.terms[0].lambda - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(dec.residual_u3.value <= 1.0 / 31f64.sqrt() + 1e-9);
        assert!(dec.residual.l2() < 1e-12);
    }

    #[test]
    fn small_norm_gives_empty_decomposition() {
        let ctx = FieldCtx::new(61).unwrap();
        let f = Signal::mult_char(&ctx, crate::field::MultChar { k: 30 }).scale(C64::new(0.5, 0.0));
        let u3 = norm_u3_plus(&f).value;
        let eps = 0.6;
        assert!(u3 < eps / 2.0);
        let dec = quad_decompose_audited(&f, eps).unwrap();
        assert!(dec.terms.is_empty());
        assert!(dec.residual.max_abs_diff(&f) == 0.0);
    }

    #[test]
    fn threshold_and_json() {
        let ctx = FieldCtx::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let noise = Signal::random_unit_l2(&ctx, &mut rng).scale(C64::new(0.3, 0.0));
        let f = Signal::quad_phase(&ctx, QuadPhase { r: 7, s: 2 }).scale(C64::new(0.9, 0.0)).add(&noise).unwrap();
        let f = f.scale(C64::new(1.0 / f.l2(), 0.0));
        let dec = quad_decompose_audited(&f, 0.4).unwrap();
        assert!(dec.terms.iter().all(|t| t.lambda.norm() >= 0.2));
        assert!(dec.terms.iter().any(|t| (t.r, t.s) == (7, 2)));
        let j = dec.to_json();
        let back: DecompositionJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn strict_version_rejects_small_eps() {
        let ctx = FieldCtx::new(101).unwrap();
        let f = Signal::ones(&ctx);
        assert!(matches!(quad_decompose(&f, 0.4), Err(Error::Precondition(_))));
        assert!(quad_decompose_audited(&f, 0.4).is_ok());
    }

    #[test]
    fn proof_inequalities_hold_below_the_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for p in [13u64, 61] {
            let ctx = FieldCtx::new(p).unwrap();
            for _ in 0..10 {
                let dec = quad_decompose_unchecked(&Signal::random_unit_l2(&ctx, &mut rng), 0.4).unwrap();
                assert!(dec.proof_inequalities().iter().all(|m| m.holds(1e-9)));
            }
        }
    }

    #[test]
    fn norm_precondition() {
        let ctx = FieldCtx::new(13).unwrap();
        let f = Signal::constant(&ctx, C64::new(2.0, 0.0));
        assert!(matches!(quad_decompose_audited(&f, 0.5), Err(Error::Precondition(_))));
    }
}
