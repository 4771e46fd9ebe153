//! A compact property suite over every module at one prime, used by
//! `monoquad verify`.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::audit::AuditConstants;
use crate::charsums::{gauss_sum, mixed_sum, u3_box_sum, weil_product_sum, U3_BOX_MAX_P};
use crate::counting::{
    check_differencing_lemma, check_gvn_bounds, check_simple_lemma, quadratic_multiplicative_example,
    quadratic_multiplicative_value, t_op, GvnBound,
};
use crate::error::Result;
use crate::field::{FieldCtx, MultChar};
use crate::harmonic::{
    add_invert, add_transform, convolve, mult_spectrum, mult_spectrum_direct, norm_qm, norm_u2_plus, norm_u3_plus,
};
use crate::qm::{baby_count, box_measure, check_bohr_density, HGroup, QMSystem, TrigPoly};
use crate::ramsey::{dependent_random_choice, extremal_coloring, find_rich_color, FiniteGroup, PairColoring, RichMode};
use crate::regularity::{build_atoms, check_sqrt2_gap, project, quad_decompose_unchecked, smooth_box_approx};
use crate::search::{find_violation, fp_coloring_scan, interval_backtrack, ScanMode, SearchOutcome};
use crate::signal::Signal;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub module: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, module: &str, name: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = match outcome {
            Ok(v) => v,
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check { module: module.into(), name: name.into(), passed, detail });
    }
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

pub fn run_suite(p: u64, seed: u64, audit: &AuditConstants) -> Result<Vec<Check>> {
    let ctx = FieldCtx::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Suite { checks: Vec::new() };
    let signals: Vec<Signal> = (0..20).map(|_| Signal::random_bounded(&ctx, &mut rng)).collect();

    s.record("signal", "json round trip", {
        let back = Signal::from_json(&signals[0].to_json());
        back.map(|b| (b.max_abs_diff(&signals[0]) == 0.0, "exact".into()))
    });

    s.record("harmonic", "inversion and Parseval", {
        let mut errs = (0.0f64, 0.0f64);
        for f in &signals {
            let spectrum = add_transform(f);
            errs.0 = errs.0.max(add_invert(&spectrum).max_abs_diff(f));
            let energy: f64 = spectrum.coeffs.iter().map(|z| z.norm_sqr()).sum();
            errs.1 = errs.1.max((energy - f.l2_sq()).abs());
        }
        Ok((errs.0 <= 1e-10 && errs.1 <= 1e-9, format!("max errors {:.2e}, {:.2e}", errs.0, errs.1)))
    });

    s.record("harmonic", "convolution identity", (|| {
        let (f, g) = (&signals[0], &signals[1]);
        let (a, b, c) = (add_transform(f), add_transform(g), add_transform(&convolve(f, g)?));
        let err = worst((0..p as usize).map(|r| (c.coeffs[r] - a.coeffs[r] * b.coeffs[r]).norm()));
        Ok((err <= 1e-9, format!("max error {err:.2e}")))
    })());

    s.record("harmonic", "multiplicative spectrum", {
        let err = worst(signals.iter().take(5).map(|f| {
            let (a, b) = (mult_spectrum(f), mult_spectrum_direct(f));
            worst(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x - y).norm()))
        }));
        Ok((err <= 1e-9, format!("max error {err:.2e}")))
    });

    s.record("harmonic", "norm chain", {
        let bad = signals
            .iter()
            .filter(|f| {
                let (a, b, c) = (norm_u2_plus(f).value, norm_u3_plus(f).value, norm_qm(f).value);
                !(a <= b + 1e-9 && b <= c + 1e-9 && c <= f.l1() + 1e-9)
            })
            .count();
        Ok((bad == 0, format!("{bad} violations")))
    });

    s.record("counting", "quadratic-multiplicative example", (|| {
        let [f1, f2, f3, f4] = quadratic_multiplicative_example(&ctx);
        let t = t_op(&f1, &f2, &f3, &f4)?;
        let want = quadratic_multiplicative_value(p);
        Ok(((t - want).norm() <= 1e-9, format!("T = {:.12}, ((p-1)^2+1)/p^2 = {want:.12}", t.re)))
    })());

    s.record("counting", "u2+, u2x and simple lemma", (|| {
        let mut bad = 0;
        for w in signals.windows(4) {
            let fs = [&w[0], &w[1], &w[2], &w[3]];
            for which in [GvnBound::U2plus, GvnBound::U2times] {
                bad += !check_gvn_bounds(fs, which, audit)?.holds(1e-9) as usize;
            }
            let set: Vec<u64> = (0..p).filter(|_| rng.gen_bool(0.5)).collect();
            bad += !check_simple_lemma(&w[0], &w[2], &w[3], &set)?.holds(1e-9) as usize;
        }
        Ok((bad == 0, format!("{bad} violations")))
    })());

    s.record("counting", "differencing lemma", (|| {
        let mut bad = 0;
        for f in signals.iter().take(5) {
            bad += !check_differencing_lemma(f)?.holds(1e-9) as usize;
        }
        Ok((bad == 0, format!("{bad} violations")))
    })());

    s.record("qm", "baby counting lemma", (|| {
        let psi = QMSystem::new(&ctx, &[(1, 1)]);
        let f = TrigPoly::random(&mut rng, 1, 6, 3, 2.0);
        let b = baby_count(&psi, &f);
        let agree = b.rhs_enum.map_or(true, |e| (e - b.rhs_lattice).norm() <= 1e-9);
        Ok((agree, format!("|lhs - lattice sum| = {:.2e}", b.margin)))
    })());

    s.record("qm", "box and Bohr measures", (|| {
        let psi = QMSystem::new(&ctx, &[(1, 1)]);
        let eps = Rational64::new(1, 4);
        let boxed = box_measure(&HGroup::of(&psi), eps) >= eps.pow(3);
        let bohr = check_bohr_density(&psi, eps, u64::MAX)?;
        Ok((boxed, format!("Bohr density {} (floor {})", bohr.density, bohr.floor)))
    })());

    s.record("regularity", "projection identities", (|| {
        let psi = QMSystem::new(&ctx, &[(1, 1)]);
        let atoms = build_atoms(&psi, 4)?;
        let (f, g) = (&signals[0], &signals[1]);
        let pf = project(&atoms, f)?;
        let idem = project(&atoms, &pf)?.max_abs_diff(&pf);
        let adj = (pf.inner(g)? - f.inner(&project(&atoms, g)?)?).norm();
        Ok((idem <= 1e-9 && adj <= 1e-9 && pf.l2() <= f.l2() + 1e-12, format!("{idem:.1e}, {adj:.1e}")))
    })());

    s.record("regularity", "decomposition estimates", (|| {
        let f = Signal::random_unit_l2(&ctx, &mut rng);
        let dec = quad_decompose_unchecked(&f, 0.6)?;
        let ok = dec.proof_inequalities().iter().all(|m| m.holds(1e-9));
        Ok((ok, format!("{} terms, energy {:.4}", dec.terms.len(), dec.energy)))
    })());

    s.record("regularity", "smooth box", (|| {
        let sb = smooth_box_approx(1, 2, &[0, 1, 0], 0.5)?;
        let rep = sb.verify_grid(10);
        Ok((rep.violations == 0, format!("{} points, degree {}", rep.points, sb.degree)))
    })());

    s.record("regularity", "sqrt2 gap", (|| {
        let rep = check_sqrt2_gap(10_000)?;
        Ok((rep.violations.is_empty(), format!("min m||m sqrt2|| = {:.6} at m = {}", rep.min_scaled, rep.argmin)))
    })());

    s.record("ramsey", "extremal colourings", (|| {
        for r in 1..=2 {
            extremal_coloring(r)?;
        }
        Ok((true, "r = 1, 2".into()))
    })());

    s.record("ramsey", "dependent random choice", (|| {
        let (nx, ny) = (6, 5);
        let a: Vec<Vec<bool>> = (0..nx).map(|_| (0..ny).map(|_| rng.gen_bool(0.5)).collect()).collect();
        if a.iter().flatten().all(|&b| !b) {
            return Ok((true, "empty instance skipped".into()));
        }
        let eta = BigRational::new(BigInt::from(1), BigInt::from(4));
        let rep = dependent_random_choice(&vec![1; nx], &vec![1; ny], &a, &eta)?;
        Ok((true, format!("|X'| = {}", rep.x_prime.len())))
    })());

    s.record("ramsey", "rich colour", (|| {
        let c = PairColoring::random(FiniteGroup::cyclic(7), (0..7).collect(), 2, &mut rng)?;
        let o = find_rich_color(&c, RichMode::Oracle)?;
        let k = find_rich_color(&c, RichMode::Constructive)?;
        Ok((o.lambda >= k.lambda, format!("oracle colour {}, constructive colour {}", o.color, k.color)))
    })());

    s.record("charsums", "Gauss and Weil", (|| {
        for a in 0..p {
            gauss_sum(&ctx, a, 1)?;
        }
        for _ in 0..20 {
            let k = rng.gen_range(1..p - 1);
            let shifts = [0, rng.gen_range(1..p)];
            weil_product_sum(&ctx, &[MultChar { k }, MultChar { k: rng.gen_range(0..p - 1) }], &shifts)?;
        }
        Ok((true, "no violations".into()))
    })());

    s.record("charsums", "mixed sum", (|| {
        let m = mixed_sum(&ctx, 1, 0, MultChar { k: 1 }, MultChar { k: 0 }, 1)?;
        let bound = audit.mixed_sum_c * (p as f64).powf(-1.0 / 16.0);
        Ok((m.magnitude <= bound, format!("{:.4} against {bound:.4}", m.magnitude)))
    })());

    if p <= U3_BOX_MAX_P {
        s.record("charsums", "box sum", (|| {
            let b = u3_box_sum(&ctx, MultChar { k: (p - 1) / 2 }, MultChar { k: 0 }, 1)?;
            let pf = p as f64;
            let budget = audit.u3_box_c / pf.sqrt() + b.degenerate as f64 / (pf * pf * pf);
            Ok((b.value <= budget + 1e-12, format!("{:.4} against {budget:.4}", b.value)))
        })());
    }

    s.record("search", "coloring scan", (|| {
        let mode = if p <= 20 { ScanMode::Exhaustive } else { ScanMode::Random(100) };
        let rep = fp_coloring_scan(p, 2, mode, &mut rng)?;
        Ok((rep.min >= 1, format!("min {} over {} colourings", rep.min, rep.scanned)))
    })());

    s.record("search", "interval certificate", (|| {
        let out = interval_backtrack(8, 2, false, 1_000_000)?;
        let ok = match &out {
            SearchOutcome::Sat { coloring, .. } => find_violation(coloring, false).is_none(),
            _ => true,
        };
        Ok((ok, format!("{out:?}")))
    })());

    Ok(s.checks)
}
