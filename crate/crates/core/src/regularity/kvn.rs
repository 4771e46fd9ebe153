//! One correlation step and the energy-increment loop.

use serde::{Deserialize, Serialize};

use super::{build_atoms, project};
use crate::audit::AuditConstants;
use crate::error::{pre, Error, Result};
use crate::harmonic::norm_qm;
use crate::qm::{QMSystem, QMSystemJson};
use crate::signal::Signal;

/// Lipschitz budget of F(theta1, theta1', z1; theta2, theta2', z2) = e(theta1 + theta2') z1
/// on a box of side 1/R: three coordinates move by at most 1/R and
/// |e(a) - e(b)| <= 2 pi |a - b|.
pub const LIPSCHITZ_F: f64 = 6.0 * std::f64::consts::PI;

/// Default C in R >= C / delta.
pub const DEFAULT_RESOLUTION_C: f64 = 16.0;

const TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct CorrelatingProjection {
    pub phi: QMSystem,
    /// g = F o Phi
    pub g: Signal,
    /// Pi_R^Phi g
    pub projected: Signal,
    /// |<f, g>|, the QM norm of f
    pub correlation: f64,
    /// |<f, Pi_R^Phi g>|
    pub witness: f64,
    /// |<f, g>| - ||f||_1 LIPSCHITZ_F / R, which the witness must reach
    pub floor: f64,
}

/// Builds Phi = (r x^2/p, s x/p, chi_k; s x^2/(2p), s x/p, chi_k) from the
/// QM-norm maximizer e_p(r x^2 + s x) chi_k and projects F o Phi onto its atoms.
pub fn find_correlating_projection(f: &Signal, delta: f64, r: u64, c: f64) -> Result<CorrelatingProjection> {
    pre(f.linf() <= 1.0 + TOL, || format!("||f||_inf = {} exceeds 1", f.linf()))?;
    pre(r as f64 >= c / delta, || format!("resolution {r} below C/delta = {}", c / delta))?;
    correlate(f, delta, r)
}

pub(crate) fn correlate(f: &Signal, delta: f64, r: u64) -> Result<CorrelatingProjection> {
    let ctx = &f.ctx;
    let best = norm_qm(f);
    pre(best.value >= delta, || format!("||f||_QM = {} below delta = {delta}", best.value))?;
    let inv2 = ctx.inv(2).expect("p odd");
    let phi = QMSystem::new(ctx, &[(best.r, best.k), (ctx.mul(best.s, inv2), best.k)]);
    let g = Signal::from_fn(ctx, |x| {
        let pt = phi.eval(x);
        let (c1, c2) = (pt.coords[0], pt.coords[1]);
        ctx.e_p((c1.t + c2.u) % ctx.p) * ctx.e_pm1(c1.v)
    });
    let atoms = build_atoms(&phi, r)?;
    let projected = project(&atoms, &g)?;
    let correlation = f.inner(&g)?.norm();
    let witness = f.inner(&projected)?.norm();
    let floor = correlation - f.l1() * LIPSCHITZ_F / r as f64;
    if witness < floor - TOL {
        return Err(Error::BoundViolated(format!("witness {witness} below Lipschitz floor {floor}")));
    }
    Ok(CorrelatingProjection { phi, g, projected, correlation, witness, floor })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KvnReport {
    pub psi: QMSystemJson,
    pub iterations: usize,
    pub budget: usize,
    /// E_j = sum_i ||Pi_j f_i||_2^2 for j = 0..=iterations
    pub energies: Vec<f64>,
    /// index of the function whose residual drove each step
    pub chosen: Vec<usize>,
    /// witness of each step
    pub witnesses: Vec<f64>,
    /// final QM norms of f_i - Pi f_i
    pub residual_qm: Vec<f64>,
}

/// Grows Psi0 by two dimensions at a time until every residual f_i - Pi_R^Psi f_i
/// has QM norm at most delta.
///
/// Each step checks the Pythagorean identity
/// ||Pi_{j+1} f||^2 - ||Pi_j f||^2 = ||Pi_{j+1} f - Pi_j f||^2 (within 1e-9)
/// and that the driving function gains at least witness^2 in energy.
pub fn kvn_energy_increment(
    fs: &[Signal],
    psi0: &QMSystem,
    delta: f64,
    r: u64,
    audit: &AuditConstants,
) -> Result<(QMSystem, KvnReport)> {
    pre(!fs.is_empty(), || "no functions given".into())?;
    pre(delta > 0.0, || format!("delta = {delta} must be positive"))?;
    for f in fs {
        f.same_field(&fs[0])?;
        pre(f.linf() <= 1.0 + TOL, || format!("||f||_inf = {} exceeds 1", f.linf()))?;
    }
    pre(audit.kvn_gain_c > 0.0, || "kvn_gain_c must be positive".into())?;
    let budget = (fs.len() as f64 / (audit.kvn_gain_c * delta * delta)).ceil() as usize;

    let mut psi = psi0.clone();
    let mut proj = project_all(fs, &psi, r)?;
    let mut energies = vec![energy(&proj)];
    let mut chosen = Vec::new();
    let mut witnesses = Vec::new();
    loop {
        let residuals: Vec<Signal> = fs.iter().zip(&proj).map(|(f, pf)| f.sub(pf)).collect::<Result<_>>()?;
        let norms: Vec<f64> = residuals.iter().map(|g| norm_qm(g).value).collect();
        let (imax, &nmax) = norms
            .iter()
            .enumerate()
            .fold((0, &f64::NEG_INFINITY), |acc, (i, n)| if *n > *acc.1 { (i, n) } else { acc });
        if nmax <= delta {
            let report = KvnReport {
                psi: psi.to_json(),
                iterations: chosen.len(),
                budget,
                energies,
                chosen,
                witnesses,
                residual_qm: norms,
            };
            return Ok((psi, report));
        }
        if chosen.len() >= budget {
            return Err(Error::Budget(format!(
                "energy increment did not stop within {budget} steps; energies {energies:?}"
            )));
        }
        let step = correlate(&residuals[imax], delta, r)?;
        let next_psi = psi.extend(&step.phi);
        let next = project_all(fs, &next_psi, r)?;
        for (i, (a, b)) in proj.iter().zip(&next).enumerate() {
            let diff = b.sub(a)?.l2_sq();
            let gain = b.l2_sq() - a.l2_sq();
            if (gain - diff).abs() > 1e-9 {
                return Err(Error::BoundViolated(format!("step {}: Pythagoras fails for f_{i}: {gain} vs {diff}", chosen.len())));
            }
            if i == imax && diff < step.witness * step.witness - TOL {
                return Err(Error::BoundViolated(format!(
                    "step {}: gain {diff} below witness^2 = {}",
                    chosen.len(),
                    step.witness * step.witness
                )));
            }
        }
        psi = next_psi;
        proj = next;
        energies.push(energy(&proj));
        chosen.push(imax);
        witnesses.push(step.witness);
    }
}

fn project_all(fs: &[Signal], psi: &QMSystem, r: u64) -> Result<Vec<Signal>> {
    let atoms = build_atoms(psi, r)?;
    fs.iter().map(|f| project(&atoms, f)).collect()
}

fn energy(proj: &[Signal]) -> f64 {
    proj.iter().map(|s| s.l2_sq()).sum()
}
