//! The quadruple operator T(f1,f2,f3,f4) = E_{x,y} f1(x) f2(y) f3(x+y) f4(xy),
//! its spectral and multiplicative relatives, exact censuses, and margin audits.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audit::AuditConstants;
use crate::error::{pre, Error, Result};
use crate::field::{FieldCtx, MultChar, QuadPhase};
use crate::harmonic::{add_transform, norm_qm, norm_u2_plus, norm_u2_times, norm_u3_plus};
use crate::numeric::{pairwise_sum, pairwise_sum_by, C64};
use crate::report::MarginReport;
use crate::signal::Signal;

const HYP_TOL: f64 = 1e-12;

fn same_field(fs: &[&Signal]) -> Result<()> {
    for f in &fs[1..] {
        fs[0].same_field(f)?;
    }
    Ok(())
}

/// T(f1, f2, f3, f4) by the direct double loop.
pub fn t_op(f1: &Signal, f2: &Signal, f3: &Signal, f4: &Signal) -> Result<C64> {
    same_field(&[f1, f2, f3, f4])?;
    let p = f1.p() as usize;
    let (a, b, c, d) = (&f1.values, &f2.values, &f3.values, &f4.values);
    let rows: Vec<C64> = (0..p)
        .into_par_iter()
        .map(|x| a[x] * pairwise_sum_by(p, |y| b[y] * c[(x + y) % p] * d[x * y % p]))
        .collect();
    Ok(pairwise_sum(&rows) / (p * p) as f64)
}

/// sum_r f3^(r) f1^(-r) f2^(-r), which equals T(f1, f2, f3, 1).
pub fn t_spectral_sums(f1: &Signal, f2: &Signal, f3: &Signal) -> Result<C64> {
    same_field(&[f1, f2, f3])?;
    let p = f1.p();
    let (a, b, c) = (add_transform(f1), add_transform(f2), add_transform(f3));
    let terms: Vec<C64> = (0..p).map(|r| c.at(r) * a.at(p - r) * b.at(p - r)).collect();
    Ok(pairwise_sum(&terms))
}

/// E_{x,y in F*} g1(x) g2(y) g4(xy).
pub fn t_tilde(g1: &Signal, g2: &Signal, g4: &Signal) -> Result<C64> {
    same_field(&[g1, g2, g4])?;
    let p = g1.p() as usize;
    let rows: Vec<C64> = (1..p)
        .into_par_iter()
        .map(|x| g1.values[x] * pairwise_sum_by(p - 1, |i| g2.values[i + 1] * g4.values[x * (i + 1) % p]))
        .collect();
    Ok(pairwise_sum(&rows) / ((p - 1) * (p - 1)) as f64)
}

/// The four pieces of T(g1, g2, 1, g4): three boundary terms from x = 0 or
/// y = 0, and ((p-1)/p)^2 T~(g1, g2, g4). They sum to T exactly.
pub fn t_boundary_terms(g1: &Signal, g2: &Signal, g4: &Signal) -> Result<[C64; 4]> {
    let tt = t_tilde(g1, g2, g4)?;
    let p = g1.p() as f64;
    let (a0, b0, d0) = (g1.values[0], g2.values[0], g4.values[0]);
    let s1 = pairwise_sum(&g1.values);
    let s2 = pairwise_sum(&g2.values);
    Ok([
        -a0 * b0 * d0 / (p * p),
        a0 * d0 * s2 / (p * p),
        b0 * d0 * s1 / (p * p),
        tt * ((p - 1.0) / p).powi(2),
    ])
}

/// f1 = f2 = gamma(t^2) chi(t), f3 = gamma(-t^2), f4 = gamma(2t) conj(chi(t))
/// with gamma = e_p(.) and chi the character of index 1. T of this
/// quadruple is ((p-1)^2 + 1)/p^2 although every f_i has small u2 norms.
pub fn quadratic_multiplicative_example(ctx: &Arc<FieldCtx>) -> [Signal; 4] {
    let chi = MultChar { k: 1 };
    let p = ctx.p;
    let f1 = Signal::from_fn(ctx, |x| ctx.eval_quad(QuadPhase { r: 1, s: 0 }, x) * ctx.eval_mult_char(chi, x));
    let f3 = Signal::quad_phase(ctx, QuadPhase { r: p - 1, s: 0 });
    let f4 = Signal::from_fn(ctx, |x| ctx.eval_add_char(2, x) * ctx.eval_mult_char(chi, x).conj());
    [f1.clone(), f1, f3, f4]
}

/// The value ((p-1)^2 + 1)/p^2 taken by T on the example above.
pub fn quadratic_multiplicative_value(p: u64) -> f64 {
    let p = p as f64;
    ((p - 1.0).powi(2) + 1.0) / (p * p)
}

/// A total or partial colouring of {0, .., n-1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub r: usize,
    pub colors: Vec<Option<usize>>,
}

impl Coloring {
    pub fn total(r: usize, colors: Vec<usize>) -> Result<Coloring> {
        Coloring::partial(r, colors.into_iter().map(Some).collect())
    }

    pub fn partial(r: usize, colors: Vec<Option<usize>>) -> Result<Coloring> {
        if let Some(c) = colors.iter().flatten().find(|&&c| c >= r) {
            return Err(Error::Invalid(format!("colour {c} out of range for r = {r}")));
        }
        Ok(Coloring { r, colors })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|c| c.is_some())
    }

    pub fn class(&self, i: usize) -> Vec<u64> {
        (0..self.colors.len()).filter(|&x| self.colors[x] == Some(i)).map(|x| x as u64).collect()
    }

    pub fn relabel(&self, perm: &[usize]) -> Coloring {
        Coloring { r: self.r, colors: self.colors.iter().map(|c| c.map(|c| perm[c])).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub p: u64,
    pub r: usize,
    pub per_color: Vec<u64>,
    pub total: u64,
}

fn census_counts(p: usize, c: &Coloring) -> Vec<u64> {
    let mut per = vec![0u64; c.r];
    for x in 0..p {
        let Some(cx) = c.colors[x] else { continue };
        for y in 0..p {
            if c.colors[y] == Some(cx) && c.colors[(x + y) % p] == Some(cx) && c.colors[x * y % p] == Some(cx) {
                per[cx] += 1;
            }
        }
    }
    per
}

/// Exact count, per colour, of pairs (x, y) in F_p^2 with x, y, x+y, xy all in
/// that colour. Each count is cross-checked against p^2 T(1_A, 1_A, 1_A, 1_A).
pub fn census_quadruples(ctx: &Arc<FieldCtx>, c: &Coloring) -> Result<CensusReport> {
    let p = ctx.p as usize;
    if c.len() != p {
        return Err(Error::Length { expected: p, got: c.len() });
    }
    if !c.is_total() {
        return Err(Error::Invalid("partial colouring; use census_quadruples_partial".into()));
    }
    let per = census_counts(p, c);
    for (i, &n) in per.iter().enumerate() {
        let a = Signal::indicator_of(ctx, &c.class(i));
        let t = t_op(&a, &a, &a, &a)? * (p * p) as f64;
        if (t.re - n as f64).abs() > 1e-6 * (p * p) as f64 || t.im.abs() > 1e-6 * (p * p) as f64 {
            return Err(Error::BoundViolated(format!("census class {i}: exact {n} vs p^2 T = {t}")));
        }
    }
    let total = per.iter().sum();
    Ok(CensusReport { p: ctx.p, r: c.r, per_color: per, total })
}

/// As `census_quadruples`, counting only pairs whose four entries are all assigned.
pub fn census_quadruples_partial(ctx: &Arc<FieldCtx>, c: &Coloring) -> Result<CensusReport> {
    let p = ctx.p as usize;
    if c.len() != p {
        return Err(Error::Length { expected: p, got: c.len() });
    }
    let per = census_counts(p, c);
    let total = per.iter().sum();
    Ok(CensusReport { p: ctx.p, r: c.r, per_color: per, total })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleKind {
    /// (x, y, x+y)
    Sum,
    /// (x, y, xy)
    Product,
    /// (x, x+y, xy)
    Shkredov,
}

/// Number of pairs (x, y) in F_p^2 whose triple of the given kind lies in A.
pub fn census_triples(ctx: &FieldCtx, a: &[u64], kind: TripleKind) -> u64 {
    let p = ctx.p as usize;
    let mut inside = vec![false; p];
    for &x in a {
        inside[(x % ctx.p) as usize] = true;
    }
    let mut n = 0u64;
    for x in 0..p {
        for y in 0..p {
            let (s, m) = ((x + y) % p, x * y % p);
            let hit = match kind {
                TripleKind::Sum => inside[x] && inside[y] && inside[s],
                TripleKind::Product => inside[x] && inside[y] && inside[m],
                TripleKind::Shkredov => inside[x] && inside[s] && inside[m],
            };
            n += hit as u64;
        }
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GvnBound {
    /// |T(f1,f2,f3,1)| <= inf_i ||f_i||_{u2+}, given ||f_i||_2 <= 1. f4 is not used.
    U2plus,
    /// |T(g1,g2,1,g4)| <= inf_i ||g_i||_{u2x} + 4K^3/p, given ||g_i||_2 <= 1 and
    /// ||g_i||_inf <= K. Here (g1, g2, g4) = (f1, f2, f4) and f3 is not used.
    U2times,
    /// |T|^8 <= ||f3||_{u3+}^2 + C p^{-1/2}.
    Gvn3,
    /// |T| <= C inf_i max(p^{-1/64}, ||f_i||_QM^{1/5}).
    GvnQm,
}

fn check_norm(name: &str, value: f64, bound: f64) -> Result<()> {
    pre(value <= bound * (1.0 + HYP_TOL) + HYP_TOL, || format!("{name} = {value} exceeds {bound}"))
}

pub fn check_gvn_bounds(fs: [&Signal; 4], which: GvnBound, audit: &AuditConstants) -> Result<MarginReport> {
    same_field(&fs)?;
    let ctx = &fs[0].ctx;
    let p = ctx.p as f64;
    let one = Signal::ones(ctx);
    match which {
        GvnBound::U2plus => {
            for (i, f) in fs[..3].iter().enumerate() {
                check_norm(&format!("||f{}||_2", i + 1), f.l2(), 1.0)?;
            }
            let lhs = t_op(fs[0], fs[1], fs[2], &one)?.norm();
            let rhs = fs[..3].iter().map(|f| norm_u2_plus(f).value).fold(f64::INFINITY, f64::min);
            Ok(MarginReport::new("u2plus", lhs, rhs))
        }
        GvnBound::U2times => {
            let gs = [fs[0], fs[1], fs[3]];
            for (i, g) in gs.iter().enumerate() {
                check_norm(&format!("||g{}||_2", [1, 2, 4][i]), g.l2(), 1.0)?;
            }
            let k = gs.iter().map(|g| g.linf()).fold(1.0, f64::max);
            let lhs = t_op(gs[0], gs[1], &one, gs[2])?.norm();
            let inf = gs.iter().map(|g| norm_u2_times(g).value).fold(f64::INFINITY, f64::min);
            Ok(MarginReport::new("u2times", lhs, inf + 4.0 * k.powi(3) / p))
        }
        GvnBound::Gvn3 => {
            for i in [0, 1, 3] {
                check_norm(&format!("||f{}||_inf", i + 1), fs[i].linf(), 1.0)?;
            }
            check_norm("||f3||_2", fs[2].l2(), 1.0)?;
            check_norm("||f3||_inf", fs[2].linf(), p.powf(1.0 / 16.0))?;
            let lhs = t_op(fs[0], fs[1], fs[2], fs[3])?.norm().powi(8);
            let rhs = norm_u3_plus(fs[2]).value.powi(2) + audit.gvn3_c / p.sqrt();
            Ok(MarginReport::new("gvn3", lhs, rhs))
        }
        GvnBound::GvnQm => {
            for (i, f) in fs.iter().enumerate() {
                check_norm(&format!("||f{}||_inf", i + 1), f.linf(), 1.0)?;
            }
            let lhs = t_op(fs[0], fs[1], fs[2], fs[3])?.norm();
            let floor = p.powf(-1.0 / 64.0);
            let inf = fs.iter().map(|f| floor.max(norm_qm(f).value.powf(0.2))).fold(f64::INFINITY, f64::min);
            Ok(MarginReport::new("gvnQM", lhs, audit.gvn_qm_c * inf))
        }
    }
}

/// sup over h in F*, r in F of E_{z in F} |(Delta_{zh} f)^(zr)|^2, where
/// Delta_h f(x) = f(x+h) conj(f(x)). Returns (value, h, r).
pub fn differencing_sup(f: &Signal) -> (f64, u64, u64) {
    let p = f.p();
    let pu = p as usize;
    // spectra of Delta_w f for every w; the quantity only depends on z h
    let spectra: Vec<Vec<f64>> = (0..p)
        .into_par_iter()
        .map(|w| {
            let d = Signal::from_fn(&f.ctx, |x| f.at(x + w) * f.at(x).conj());
            add_transform(&d).coeffs.iter().map(|z| z.norm_sqr()).collect()
        })
        .collect();
    let rows: Vec<(f64, u64, u64)> = (1..p)
        .into_par_iter()
        .map(|h| {
            let mut best = (f64::NEG_INFINITY, h, 0);
            for r in 0..p {
                let terms: Vec<f64> =
                    (0..pu).map(|z| spectra[z * h as usize % pu][z * r as usize % pu]).collect();
                let v = crate::numeric::pairwise_sum_real(&terms) / p as f64;
                if v > best.0 {
                    best = (v, h, r);
                }
            }
            best
        })
        .collect();
    rows.into_iter().fold((f64::NEG_INFINITY, 0, 0), |a, b| if b.0 > a.0 { b } else { a })
}

/// sup_{h,r} E_z |(Delta_{zh} f)^(zr)|^2 <= ||f||_{u3+}^2 for ||f||_2 <= 1.
pub fn check_differencing_lemma(f: &Signal) -> Result<MarginReport> {
    check_norm("||f||_2", f.l2(), 1.0)?;
    let (lhs, _, _) = differencing_sup(f);
    Ok(MarginReport::new("differencing", lhs, norm_u3_plus(f).value.powi(2)))
}

/// |T(f1, 1_S, f3, f4)| <= K^3/p + 9 mu(S) min_i ||f_i||_2, with K = max_i ||f_i||_inf
/// and the hypothesis ||f_i||_4 <= 3.
pub fn check_simple_lemma(f1: &Signal, f3: &Signal, f4: &Signal, s: &[u64]) -> Result<MarginReport> {
    same_field(&[f1, f3, f4])?;
    let fs = [f1, f3, f4];
    for (i, f) in fs.iter().enumerate() {
        check_norm(&format!("||f{}||_4", [1, 3, 4][i]), f.l4(), 3.0)?;
    }
    let ctx = &f1.ctx;
    let p = ctx.p as f64;
    let ind = Signal::indicator_of(ctx, s);
    let mu = ind.mean().re;
    let k = fs.iter().map(|f| f.linf()).fold(0.0, f64::max);
    let lhs = t_op(f1, &ind, f3, f4)?.norm();
    let m = fs.iter().map(|f| f.l2()).fold(f64::INFINITY, f64::min);
    Ok(MarginReport::new("simple", lhs, k.powi(3) / p + 9.0 * mu * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::norm_u2_plus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn example_quadruple_value() {
        for p in [13u64, 17, 31] {
            let ctx = FieldCtx::new(p).unwrap();
            let [f1, f2, f3, f4] = quadratic_multiplicative_example(&ctx);
            let t = t_op(&f1, &f2, &f3, &f4).unwrap();
            assert!((t - quadratic_multiplicative_value(p)).norm() < 1e-9);
            // every f_i is small in u2+ and u2x
            for f in [&f1, &f2, &f3, &f4] {
                assert!(norm_u2_plus(f).value < 2.0 / (p as f64).sqrt());
            }
        }
    }

    #[test]
    fn spectral_and_slices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ctx = FieldCtx::new(17).unwrap();
        let one = Signal::ones(&ctx);
        assert!((t_op(&one, &one, &one, &one).unwrap() - 1.0).norm() < 1e-12);
        assert!((t_spectral_sums(&one, &one, &one).unwrap() - 1.0).norm() < 1e-12);
        assert!((t_tilde(&one, &one, &one).unwrap() - 1.0).norm() < 1e-12);
        let (a, b, c, d) = (
            Signal::random(&ctx, &mut rng),
            Signal::random(&ctx, &mut rng),
            Signal::random(&ctx, &mut rng),
            Signal::random(&ctx, &mut rng),
        );
        let direct = t_op(&a, &b, &c, &one).unwrap();
        assert!((direct - t_spectral_sums(&a, &b, &c).unwrap()).norm() < 1e-9);
        // f3 an additive character picks out one spectral term
        let e = Signal::from_fn(&ctx, |x| ctx.eval_add_char(3, x));
        let fa = add_transform(&a);
        let fb = add_transform(&b);
        let v = t_spectral_sums(&a, &b, &e).unwrap();
        assert!((v - fa.at(14) * fb.at(14)).norm() < 1e-12);
        // y = 0 slice
        let delta = Signal::indicator_of(&ctx, &[0]);
        let lhs = t_op(&a, &delta, &c, &d).unwrap();
        let rhs: C64 = (0..17).map(|x| a.at(x) * c.at(x) * d.at(0)).sum::<C64>() / 289.0;
        assert!((lhs - rhs).norm() < 1e-12);
        // boundary decomposition
        let parts = t_boundary_terms(&a, &b, &d).unwrap();
        let whole = t_op(&a, &b, &one, &d).unwrap();
        assert!((parts.iter().sum::<C64>() - whole).norm() < 1e-10);
    }

    #[test]
    fn t_tilde_bounded_by_multiplicative_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = 13u64;
        let ctx = FieldCtx::new(p).unwrap();
        for _ in 0..20 {
            let g1 = Signal::random_unit_l2(&ctx, &mut rng);
            let g2 = Signal::random_unit_l2(&ctx, &mut rng);
            let g4 = Signal::mult_char(&ctx, MultChar { k: 5 }).mul(&Signal::random_bounded(&ctx, &mut rng)).unwrap();
            let tt = t_tilde(&g1, &g2, &g4).unwrap().norm();
            // sup over chi of |E_{x in F*} g_i(x) conj chi(x)|, i = 1, 2, 4
            let star_sup = |g: &Signal| {
                (0..p - 1)
                    .map(|k| {
                        (1..p).map(|x| g.at(x) * ctx.eval_mult_char(MultChar { k }, x).conj()).sum::<C64>().norm()
                            / (p - 1) as f64
                    })
                    .fold(0.0, f64::max)
            };
            let l2_star = |g: &Signal| ((1..p).map(|x| g.at(x).norm_sqr()).sum::<f64>() / (p - 1) as f64).sqrt();
            let gs = [&g1, &g2, &g4];
            for i in 0..3 {
                let others: f64 = (0..3).filter(|&j| j != i).map(|j| l2_star(gs[j])).product();
                assert!(tt <= star_sup(gs[i]) * others + 1e-12);
                assert!(tt <= p as f64 / (p - 1) as f64 * star_sup(gs[i]) + 1e-12);
            }
        }
    }

    #[test]
    fn census_examples() {
        let ctx = FieldCtx::new(7).unwrap();
        let mono = Coloring::total(1, vec![0; 7]).unwrap();
        assert_eq!(census_quadruples(&ctx, &mono).unwrap().total, 49);
        // {0} + quadratic residues vs non-residues
        let qr: Vec<usize> = (0..7u64).map(|x| if x == 0 || [1, 2, 4].contains(&x) { 0 } else { 1 }).collect();
        let c = Coloring::total(2, qr).unwrap();
        let rep = census_quadruples(&ctx, &c).unwrap();
        assert!(rep.total >= 1);
        let swapped = census_quadruples(&ctx, &c.relabel(&[1, 0])).unwrap();
        assert_eq!(swapped.per_color, vec![rep.per_color[1], rep.per_color[0]]);
        let partial = Coloring::partial(2, vec![Some(0), None, None, None, None, None, None]).unwrap();
        assert!(census_quadruples(&ctx, &partial).is_err());
        assert_eq!(census_quadruples_partial(&ctx, &partial).unwrap().total, 1);
    }

    #[test]
    fn triple_examples() {
        for p in [13u64, 31, 101] {
            let ctx = FieldCtx::new(p).unwrap();
            let all: Vec<u64> = (0..p).collect();
            assert_eq!(census_triples(&ctx, &all, TripleKind::Shkredov), p * p);
            let middle: Vec<u64> = (0..p).filter(|&x| 3 * x > p && 3 * x < 2 * p).collect();
            assert_eq!(census_triples(&ctx, &middle, TripleKind::Sum), 0);
        }
    }

    #[test]
    fn t_is_multilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ctx = FieldCtx::new(11).unwrap();
        let f: Vec<Signal> = (0..5).map(|_| Signal::random(&ctx, &mut rng)).collect();
        let sum = f[0].add(&f[4]).unwrap();
        let a = t_op(&f[1], &sum, &f[2], &f[3]).unwrap();
        let b = t_op(&f[1], &f[0], &f[2], &f[3]).unwrap() + t_op(&f[1], &f[4], &f[2], &f[3]).unwrap();
        assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn hypotheses_are_checked() {
        let ctx = FieldCtx::new(11).unwrap();
        let big = Signal::constant(&ctx, C64::new(2.0, 0.0));
        let one = Signal::ones(&ctx);
        let audit = AuditConstants::default();
        assert!(check_gvn_bounds([&big, &one, &one, &one], GvnBound::U2plus, &audit).is_err());
        assert!(check_gvn_bounds([&one, &one, &one, &big], GvnBound::GvnQm, &audit).is_err());
        let s: Vec<u64> = (0..11).collect();
        let m = check_simple_lemma(&one, &one, &one, &s).unwrap();
        assert!((m.lhs - 1.0).abs() < 1e-12 && (m.rhs - (1.0 / 11.0 + 9.0)).abs() < 1e-12);
        let m = check_simple_lemma(&one, &one, &one, &[]).unwrap();
        assert!(m.lhs.abs() < 1e-12 && m.holds(0.0));
    }

    #[test]
    fn differencing_lemma_on_phases() {
        let ctx = FieldCtx::new(13).unwrap();
        let phi = Signal::quad_phase(&ctx, QuadPhase { r: 3, s: 1 });
        let m = check_differencing_lemma(&phi).unwrap();
        assert!((m.rhs - 1.0).abs() < 1e-12 && m.holds(1e-9));
        // brute-force the left side for a random signal
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = Signal::random_unit_l2(&ctx, &mut rng);
        let mut best = 0.0f64;
        for h in 1..13u64 {
            for r in 0..13u64 {
                let mut acc = 0.0;
                for z in 0..13u64 {
                    let d = Signal::from_fn(&ctx, |x| f.at(x + z * h) * f.at(x).conj());
                    acc += add_transform_direct_at(&d, z * r % 13).norm_sqr();
                }
                best = best.max(acc / 13.0);
            }
        }
        assert!((differencing_sup(&f).0 - best).abs() < 1e-12);
    }

    fn add_transform_direct_at(f: &Signal, r: u64) -> C64 {
        crate::harmonic::add_transform_direct(f).at(r)
    }
}
