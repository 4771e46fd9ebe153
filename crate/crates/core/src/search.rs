//! Colourings avoiding monochromatic {x, y, x+y, xy}: backtracking on
//! {1, ..., N} and scans over colourings of F_p.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{pre, Result};

pub const MAX_N: usize = 300;

/// The quadruples {x, y, x+y, xy} inside [N], with x <= y (x < y if `distinct`),
/// grouped by their largest element.
fn constraints_by_max(n: usize, distinct: bool) -> Vec<Vec<[usize; 4]>> {
    let mut by_max = vec![Vec::new(); n + 1];
    for x in 1..=n {
        let y0 = if distinct { x + 1 } else { x };
        for y in y0..=n {
            if x + y > n || x * y > n {
                break;
            }
            let q = [x, y, x + y, x * y];
            let m = *q.iter().max().unwrap();
            by_max[m].push(q);
        }
    }
    by_max
}

/// Independent check of a colouring of [N] (entry i is the colour of i + 1):
/// returns the first monochromatic (x, y) found by scanning all pairs.
pub fn find_violation(colors: &[u8], distinct: bool) -> Option<(usize, usize)> {
    let n = colors.len();
    let c = |v: usize| colors[v - 1];
    for x in 1..=n {
        for y in 1..=n {
            if distinct && x == y {
                continue;
            }
            let (s, m) = (x + y, x * y);
            if s <= n && m <= n && c(x) == c(y) && c(y) == c(s) && c(s) == c(m) {
                return Some((x, y));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Sat { coloring: Vec<u8>, nodes: u64 },
    Unsat { nodes: u64 },
    BudgetExhausted { best_depth: usize, nodes: u64 },
}

impl SearchOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SearchOutcome::Sat { .. })
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SearchOutcome::Unsat { .. })
    }
}

/// Depth-first search colouring 1, 2, ..., N in order. Colours are tried
/// least-used first; a new colour may only be opened as max-used + 1, which
/// removes colour permutations. Each quadruple is checked when its largest
/// element is coloured. `budget` caps the number of nodes visited.
pub fn interval_backtrack(n: usize, r: usize, distinct: bool, budget: u64) -> Result<SearchOutcome> {
    pre(r == 2 || r == 3, || format!("r = {r} must be 2 or 3"))?;
    pre(n <= MAX_N, || format!("N = {n} above {MAX_N}"))?;
    if n == 0 {
        return Ok(SearchOutcome::Sat { coloring: Vec::new(), nodes: 0 });
    }
    let cons = constraints_by_max(n, distinct);
    let mut colors = vec![u8::MAX; n + 1];
    let mut used = vec![0usize; r];
    // per depth: the candidate colours still to try
    let mut stack: Vec<Vec<u8>> = Vec::with_capacity(n + 1);
    let mut nodes: u64 = 0;
    let mut best_depth = 0;

    let candidates = |v: usize, colors: &[u8], used: &[usize]| -> Vec<u8> {
        let opened = colors[1..v].iter().copied().max().map_or(0, |m| m as usize + 1);
        let limit = (opened + 1).min(r);
        let mut cs: Vec<u8> = (0..limit as u8).collect();
        cs.sort_by_key(|&c| (used[c as usize], c));
        cs.reverse(); // popped from the back
        cs
    };
    stack.push(candidates(1, &colors, &used));
    loop {
        let v = stack.len();
        let Some(c) = stack[v - 1].pop() else {
            stack.pop();
            if stack.is_empty() {
                return Ok(SearchOutcome::Unsat { nodes });
            }
            let prev = stack.len();
            used[colors[prev] as usize] -= 1;
            colors[prev] = u8::MAX;
            continue;
        };
        nodes += 1;
        if nodes > budget {
            return Ok(SearchOutcome::BudgetExhausted { best_depth, nodes: nodes - 1 });
        }
        colors[v] = c;
        let ok = cons[v].iter().all(|q| !q.iter().all(|&e| colors[e] == c));
        if !ok {
            colors[v] = u8::MAX;
            continue;
        }
        used[c as usize] += 1;
        best_depth = best_depth.max(v);
        if v == n {
            let coloring = colors[1..].to_vec();
            debug_assert!(find_violation(&coloring, distinct).is_none());
            return Ok(SearchOutcome::Sat { coloring, nodes });
        }
        stack.push(candidates(v + 1, &colors, &used));
    }
}

/// Whether any r-colouring of [N] avoids the pattern, by trying all r^N.
pub fn enumerate_exists(n: usize, r: usize, distinct: bool) -> Result<bool> {
    let total = (r as u128).pow(n as u32);
    pre(total <= 1_000_000, || format!("{r}^{n} colourings is too many to enumerate"))?;
    Ok((0..total as u64).into_par_iter().any(|mut code| {
        let colors: Vec<u8> = (0..n)
            .map(|_| {
                let c = (code % r as u64) as u8;
                code /= r as u64;
                c
            })
            .collect();
        find_violation(&colors, distinct).is_none()
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierReport {
    pub r: usize,
    pub distinct: bool,
    pub outcomes: Vec<(usize, SearchOutcome)>,
    /// largest N with a certificate
    pub last_sat: Option<usize>,
    /// smallest N proved unsatisfiable
    pub first_unsat: Option<usize>,
}

/// Runs the search for N = 1, 2, ..., n_max, stopping after the first UNSAT
/// or budget exhaustion. Every certificate is re-checked.
pub fn interval_frontier(r: usize, distinct: bool, n_max: usize, budget: u64) -> Result<FrontierReport> {
    let mut outcomes = Vec::new();
    let (mut last_sat, mut first_unsat) = (None, None);
    for n in 1..=n_max {
        let out = interval_backtrack(n, r, distinct, budget)?;
        match &out {
            SearchOutcome::Sat { coloring, .. } => {
                if let Some((x, y)) = find_violation(coloring, distinct) {
                    return Err(crate::Error::BoundViolated(format!("certificate for N = {n} fails at ({x}, {y})")));
                }
                last_sat = Some(n);
            }
            SearchOutcome::Unsat { .. } => first_unsat = Some(n),
            SearchOutcome::BudgetExhausted { .. } => {}
        }
        let stop = !out.is_sat();
        outcomes.push((n, out));
        if stop {
            break;
        }
    }
    Ok(FrontierReport { r, distinct, outcomes, last_sat, first_unsat })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub p: u64,
    pub r: usize,
    pub mode: ScanMode,
    pub scanned: u64,
    /// fewest ordered pairs (x, y) with x, y, x+y, xy one colour
    pub min: u64,
    pub mean: f64,
    /// a colouring attaining the minimum (the first in scan order)
    pub argmin: Vec<u8>,
}

/// #{(x, y) in F_p^2 : c(x) = c(y) = c(x+y) = c(xy)}.
pub fn count_monochromatic(p: u64, colors: &[u8]) -> u64 {
    let mut n = 0;
    for x in 0..p {
        let cx = colors[x as usize];
        for y in 0..p {
            if colors[y as usize] == cx
                && colors[((x + y) % p) as usize] == cx
                && colors[((x * y) % p) as usize] == cx
            {
                n += 1;
            }
        }
    }
    n
}

fn decode_coloring(mut code: u64, p: u64, r: usize) -> Vec<u8> {
    (0..p)
        .map(|_| {
            let c = (code % r as u64) as u8;
            code /= r as u64;
            c
        })
        .collect()
}

pub fn fp_coloring_scan<R: Rng>(p: u64, r: usize, mode: ScanMode, rng: &mut R) -> Result<ScanReport> {
    crate::field::FieldCtx::new(p)?;
    pre(r >= 1 && r <= 255, || format!("r = {r} outside 1..=255"))?;
    let colorings: Vec<Vec<u8>> = match mode {
        ScanMode::Exhaustive => {
            let total = (r as f64).powi(p as i32);
            pre(total <= 1e7, || format!("{r}^{p} colourings exceeds 10^7"))?;
            (0..total as u64).map(|code| decode_coloring(code, p, r)).collect()
        }
        ScanMode::Random(count) => {
            (0..count).map(|_| (0..p).map(|_| rng.gen_range(0..r as u8)).collect()).collect()
        }
    };
    let counts: Vec<u64> = colorings.par_iter().map(|c| count_monochromatic(p, c)).collect();
    let (imin, &min) = counts.iter().enumerate().min_by_key(|&(i, c)| (*c, i)).expect("nonempty scan");
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / counts.len() as f64;
    Ok(ScanReport { p, r, mode, scanned: counts.len() as u64, min, mean, argmin: colorings[imin].clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn n1_is_free() {
        let out = interval_backtrack(1, 2, false, 100).unwrap();
        assert!(out.is_sat());
    }

    #[test]
    fn small_n_agrees_with_enumeration() {
        for distinct in [false, true] {
            for r in [2usize, 3] {
                let nmax = if r == 2 { 16 } else { 12 };
                for n in 1..=nmax {
                    let out = interval_backtrack(n, r, distinct, u64::MAX).unwrap();
                    let exists = enumerate_exists(n, r, distinct).unwrap();
                    assert_eq!(out.is_sat(), exists, "n={n} r={r} distinct={distinct}");
                    if let SearchOutcome::Sat { coloring, .. } = out {
                        assert!(find_violation(&coloring, distinct).is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn checker_catches_patterns() {
        // 1, 1, 2, 1: x = y = 1 makes {1, 2} monochromatic
        assert_eq!(find_violation(&[0, 0], false), Some((1, 1)));
        assert_eq!(find_violation(&[0, 0], true), None);
        assert_eq!(find_violation(&[0, 1], false), None);
    }

    #[test]
    fn budget_is_reported() {
        let out = interval_backtrack(40, 3, true, 5).unwrap();
        assert!(matches!(out, SearchOutcome::BudgetExhausted { nodes: 5, .. }));
    }

    #[test]
    fn scan_minimum_counts_the_zero_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for p in [5u64, 7] {
            let rep = fp_coloring_scan(p, 2, ScanMode::Exhaustive, &mut rng).unwrap();
            assert_eq!(rep.scanned, 1 << p);
            assert!(rep.min >= 1);
            assert_eq!(count_monochromatic(p, &rep.argmin), rep.min);
        }
        let rep = fp_coloring_scan(11, 3, ScanMode::Random(50), &mut rng).unwrap();
        assert_eq!(rep.scanned, 50);
    }

    #[test]
    fn monochromatic_count_constant() {
        assert_eq!(count_monochromatic(7, &[0; 7]), 49);
    }
}
