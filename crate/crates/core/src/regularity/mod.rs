//! Partitions of F_p pulled back from boxes in G^d, the conditional
//! expectation onto them, and the decomposition and energy-increment
//! procedures built on top.
//!
//! The boxes are the generalised intervals
//! `[t/R + sqrt2, (t+1)/R + sqrt2) + Z` in every coordinate. Orbit points have
//! rational coordinates, so deciding which interval contains one is an
//! integer question about `floor(a/q - m sqrt2)`, answered with an exact
//! integer square root. Equality never occurs because sqrt2 is irrational.

mod decompose;
mod kvn;
mod smooth;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{pre, Result};
use crate::numeric::{isqrt, pairwise_sum, C64};
use crate::qm::QMSystem;
use crate::signal::Signal;

pub use decompose::{quad_decompose, quad_decompose_audited, quad_decompose_unchecked, DecompositionJson, QuadDecomposition, QuadTerm, TermJson};
pub use kvn::{
    find_correlating_projection, kvn_energy_increment, CorrelatingProjection, KvnReport, DEFAULT_RESOLUTION_C,
    LIPSCHITZ_F,
};
pub use smooth::{smooth_box_approx, smooth_box_approx_with, SmoothBox, SmoothReport};

pub const MAX_RESOLUTION: u64 = 1 << 10;

/// floor(a/q - m sqrt2) for q > 0, m >= 0.
///
/// With s = isqrt(2 q^2 m^2) we have s < q m sqrt2 < s + 1 (m > 0), so
/// a - q m sqrt2 lies strictly inside (a-s-1, a-s), an open unit interval
/// containing no multiple of q.
pub(crate) fn floor_minus_sqrt2(a: i128, q: i128, m: i128) -> i128 {
    if m == 0 {
        return a.div_euclid(q);
    }
    let s = isqrt((2 * q * q * m * m) as u128) as i128;
    (a - s - 1).div_euclid(q)
}

/// The irrational number w = frac(n/q - sqrt2) in [0, 1).
#[derive(Debug, Clone, Copy)]
pub(crate) struct ShiftedFrac {
    n: i128,
    q: i128,
}

impl ShiftedFrac {
    pub(crate) fn new(n: u64, q: u64) -> ShiftedFrac {
        ShiftedFrac { n: n as i128, q: q as i128 }
    }

    /// floor(R w), i.e. the index of the generalised interval at resolution R.
    pub(crate) fn index(&self, r: u64) -> u64 {
        let r = r as i128;
        floor_minus_sqrt2(r * self.n, self.q, r).rem_euclid(r) as u64
    }

    /// w < a/b for b > 0.
    pub(crate) fn lt(&self, a: i128, b: i128) -> bool {
        let k = floor_minus_sqrt2(self.n, self.q, 1);
        // w < a/b  <=>  n b - k q b - a q < q b sqrt2
        let l = self.n * b - k * self.q * b - a * self.q;
        l <= 0 || l * l < 2 * self.q * self.q * b * b
    }

    /// w lies in the open arc (lo, hi) of R/Z, given as fractions over `b`
    /// with lo < hi and hi - lo <= b.
    pub(crate) fn in_open_arc(&self, lo: i128, hi: i128, b: i128) -> bool {
        if hi - lo >= b {
            return true;
        }
        (-1..=1).any(|m: i128| {
            let (l, h) = (lo + m * b, hi + m * b);
            // w > l/b is !lt(l, b) because w is never rational.
            !self.lt(l, b) && self.lt(h, b)
        })
    }
}

/// Interval indices (t_j, u_j, v_j), j = 1..d, of a point with numerators
/// over (p, p, p-1).
fn box_key(psi: &QMSystem, x: u64, r: u64) -> Vec<u16> {
    let g = psi.eval(x);
    let (p, q) = (g.p, g.p - 1);
    g.coords
        .iter()
        .flat_map(|c| {
            [
                ShiftedFrac::new(c.t, p).index(r) as u16,
                ShiftedFrac::new(c.u, p).index(r) as u16,
                ShiftedFrac::new(c.v, q).index(r) as u16,
            ]
        })
        .collect()
}

/// The partition of F_p into the preimages A_{R;t,u,v} = Psi^{-1}(I_{R;t,u,v}).
/// Only nonempty atoms are kept, ordered by key.
#[derive(Debug, Clone)]
pub struct PartitionAtoms {
    pub psi: QMSystem,
    pub r: u64,
    pub atom_of: Vec<u32>,
    pub keys: Vec<Vec<u16>>,
    pub members: Vec<Vec<u64>>,
}

pub fn build_atoms(psi: &QMSystem, r: u64) -> Result<PartitionAtoms> {
    pre(r.is_power_of_two() && r <= MAX_RESOLUTION, || format!("resolution {r} must be a power of two at most 2^10"))?;
    let p = psi.p();
    let keys: Vec<Vec<u16>> = (0..p).into_par_iter().map(|x| box_key(psi, x, r)).collect();
    let mut groups: BTreeMap<Vec<u16>, Vec<u64>> = BTreeMap::new();
    for (x, k) in keys.into_iter().enumerate() {
        groups.entry(k).or_default().push(x as u64);
    }
    let mut atom_of = vec![0u32; p as usize];
    let mut out_keys = Vec::with_capacity(groups.len());
    let mut members = Vec::with_capacity(groups.len());
    for (i, (k, xs)) in groups.into_iter().enumerate() {
        for &x in &xs {
            atom_of[x as usize] = i as u32;
        }
        out_keys.push(k);
        members.push(xs);
    }
    Ok(PartitionAtoms { psi: psi.clone(), r, atom_of, keys: out_keys, members })
}

impl PartitionAtoms {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Every atom of `finer` lies inside a single atom of `self`.
    pub fn is_refined_by(&self, finer: &PartitionAtoms) -> bool {
        finer.members.iter().all(|xs| {
            let a = self.atom_of[xs[0] as usize];
            xs.iter().all(|&x| self.atom_of[x as usize] == a)
        })
    }
}

/// Pi f(x) = average of f over the atom containing x.
pub fn project(atoms: &PartitionAtoms, f: &Signal) -> Result<Signal> {
    f.same_field(&Signal::ones(&atoms.psi.ctx))?;
    let means: Vec<C64> = atoms
        .members
        .par_iter()
        .map(|xs| {
            let vals: Vec<C64> = xs.iter().map(|&x| f.values[x as usize]).collect();
            pairwise_sum(&vals) / xs.len() as f64
        })
        .collect();
    Ok(Signal { ctx: f.ctx.clone(), values: atoms.atom_of.iter().map(|&a| means[a as usize]).collect() })
}

/// Result of checking ||m sqrt2||_{R/Z} >= 1/(3m) for 1 <= m <= m_max.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sqrt2GapReport {
    pub m_max: u64,
    pub violations: Vec<u64>,
    /// The smallest m ||m sqrt2|| seen, with its m (always a Pell denominator).
    pub min_scaled: f64,
    pub argmin: u64,
}

/// Decides ||m sqrt2|| >= 1/(3m) in integers: with f = floor(m sqrt2), the two
/// one-sided distances give 18 m^4 >= (3 m f + 1)^2 and (3 m (f+1) - 1)^2 >= 18 m^4.
fn sqrt2_gap_holds(m: u64) -> bool {
    let m = m as u128;
    let f = isqrt(2 * m * m);
    let lhs = 18 * m * m * m * m;
    let below = 3 * m * f + 1;
    let above = 3 * m * (f + 1) - 1;
    lhs >= below * below && above * above >= lhs
}

pub fn check_sqrt2_gap(m_max: u64) -> Result<Sqrt2GapReport> {
    pre(m_max >= 1 && m_max <= 10_000_000, || format!("m_max = {m_max} outside 1..=10^7"))?;
    let violations: Vec<u64> = (1..=m_max).into_par_iter().filter(|&m| !sqrt2_gap_holds(m)).collect();
    // m ||m sqrt2|| is smallest at continued-fraction denominators 1, 2, 5, 12, 29, ...
    let (mut a, mut b) = (1u64, 2u64);
    let mut min_scaled = f64::INFINITY;
    let mut argmin = 1;
    let mut m = a;
    while m <= m_max {
        let x = m as f64 * std::f64::consts::SQRT_2;
        let dist = (x - x.round()).abs();
        if m as f64 * dist < min_scaled {
            min_scaled = m as f64 * dist;
            argmin = m;
        }
        m = b;
        (a, b) = (b, 2 * b + a);
    }
    Ok(Sqrt2GapReport { m_max, violations, min_scaled, argmin })
}
