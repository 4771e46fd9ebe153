//! The orbit-closure group H = G+ x G+ x Gx of a QM-system.
//!
//! G+ is the annihilator of Lambda+ = {xi : xi.a = 0 mod p}. Inside (Z_p)^d the
//! annihilator of a^perp is the cyclic group generated by a (double
//! annihilator theorem), so G+ = {s a / p : s in Z_p}, trivial when a = 0.
//! The same argument over Z_{p-1} gives Gx = {s k / (p-1)}, of order
//! (p-1)/gcd(k_1, .., k_d, p-1).

use num_integer::Integer;

use super::{GCoord, GPoint, QMSystem};

#[derive(Debug, Clone)]
pub struct HGroup {
    pub p: u64,
    pub a: Vec<u64>,
    pub k: Vec<u64>,
    /// |G+|: p, or 1 when a = 0.
    pub n_plus: u64,
    /// |Gx| = (p-1)/gcd(k, p-1).
    pub n_times: u64,
}

impl HGroup {
    pub fn of(psi: &QMSystem) -> HGroup {
        let p = psi.p();
        let a: Vec<u64> = psi.dims.iter().map(|d| d.a).collect();
        let k: Vec<u64> = psi.dims.iter().map(|d| d.k).collect();
        let n_plus = if a.iter().all(|&x| x == 0) { 1 } else { p };
        let g = k.iter().fold(p - 1, |g, &x| g.gcd(&x));
        HGroup { p, a, k, n_plus, n_times: (p - 1) / g }
    }

    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn order(&self) -> u64 {
        self.n_plus * self.n_plus * self.n_times
    }

    /// The element (s1 a/p, s2 a/p, s3 k/(p-1)).
    pub fn element(&self, s1: u64, s2: u64, s3: u64) -> GPoint {
        let (p, q) = (self.p, self.p - 1);
        GPoint {
            p,
            coords: self
                .a
                .iter()
                .zip(&self.k)
                .map(|(&a, &k)| GCoord { t: s1 * a % p, u: s2 * a % p, v: s3 * k % q })
                .collect(),
        }
    }

    /// Parameters (s1, s2, s3) in lexicographic order.
    pub fn params(&self) -> impl Iterator<Item = (u64, u64, u64)> + '_ {
        let (n1, n3) = (self.n_plus, self.n_times);
        (0..n1).flat_map(move |s1| (0..n1).flat_map(move |s2| (0..n3).map(move |s3| (s1, s2, s3))))
    }

    pub fn elements(&self) -> impl Iterator<Item = GPoint> + '_ {
        self.params().map(|(s1, s2, s3)| self.element(s1, s2, s3))
    }

    fn plus_param(&self, n: impl Fn(usize) -> u64) -> Option<u64> {
        let p = self.p;
        let Some(i) = self.a.iter().position(|&a| a != 0) else {
            return (0..self.d()).all(|j| n(j) == 0).then_some(0);
        };
        let inv = crate::numeric::mod_pow(self.a[i], p - 2, p);
        let s = n(i) * inv % p;
        (0..self.d()).all(|j| s * self.a[j] % p == n(j)).then_some(s)
    }

    /// Parameters of `g` if it lies in H.
    pub fn locate(&self, g: &GPoint) -> Option<(u64, u64, u64)> {
        if g.p != self.p || g.d() != self.d() {
            return None;
        }
        let q = self.p - 1;
        let s1 = self.plus_param(|j| g.coords[j].t)?;
        let s2 = self.plus_param(|j| g.coords[j].u)?;
        let s3 = (0..self.n_times).find(|&s| (0..self.d()).all(|j| s * self.k[j] % q == g.coords[j].v))?;
        Some((s1, s2, s3))
    }

    pub fn contains(&self, g: &GPoint) -> bool {
        self.locate(g).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use std::collections::HashSet;

    fn annihilates(h: &HGroup, g: &GPoint, xi1: &[i64], xi2: &[i64], xi3: &[i64]) -> bool {
        let (p, q) = (h.p as i128, h.p as i128 - 1);
        let dot = |xi: &[i64], f: &dyn Fn(&GCoord) -> u64| -> i128 {
            xi.iter().zip(&g.coords).map(|(&x, c)| x as i128 * f(c) as i128).sum()
        };
        dot(xi1, &|c| c.t).rem_euclid(p) == 0 && dot(xi2, &|c| c.u).rem_euclid(p) == 0 && dot(xi3, &|c| c.v).rem_euclid(q) == 0
    }

    #[test]
    fn orders() {
        let ctx = FieldCtx::new(5).unwrap();
        let h = HGroup::of(&QMSystem::new(&ctx, &[(0, 0)]));
        assert_eq!(h.order(), 1);
        let h = HGroup::of(&QMSystem::new(&ctx, &[(1, 1)]));
        assert_eq!((h.n_plus, h.n_times, h.order()), (5, 4, 100));
        let ctx7 = FieldCtx::new(7).unwrap();
        let h = HGroup::of(&QMSystem::new(&ctx7, &[(1, 2), (2, 4)]));
        assert_eq!(h.n_times, 3);
        let distinct: HashSet<GPoint> = h.elements().collect();
        assert_eq!(distinct.len() as u64, h.order());
    }

    #[test]
    fn closed_and_annihilating() {
        for (p, dims) in [(5u64, vec![(1u64, 1u64)]), (7, vec![(1, 2), (2, 4)]), (11, vec![(3, 4), (0, 5)]), (13, vec![(2, 3), (5, 8)])] {
            let ctx = FieldCtx::new(p).unwrap();
            let psi = QMSystem::new(&ctx, &dims);
            let h = HGroup::of(&psi);
            let all: Vec<GPoint> = h.elements().collect();
            let set: HashSet<GPoint> = all.iter().cloned().collect();
            for g in all.iter().step_by(7) {
                for g2 in all.iter().step_by(11) {
                    assert!(set.contains(&g.op(g2)));
                }
                assert!(set.contains(&g.inverse()));
            }
            // every small lattice vector kills every element
            let d = dims.len();
            let range: Vec<i64> = (-3..=3).collect();
            let mut vecs: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..d {
                vecs = vecs.iter().flat_map(|v| range.iter().map(move |&x| [v.clone(), vec![x]].concat())).collect();
            }
            let plus: Vec<&Vec<i64>> = vecs.iter().filter(|v| psi.in_lambda_plus(v)).collect();
            let times: Vec<&Vec<i64>> = vecs.iter().filter(|v| psi.in_lambda_times(v)).collect();
            let zero = vec![0i64; d];
            for g in &all {
                for xi in &plus {
                    assert!(annihilates(&h, g, xi, xi, &zero));
                }
                for xi in &times {
                    assert!(annihilates(&h, g, &zero, &zero, xi));
                }
            }
            // orbit lies in the closure
            for x in 0..p {
                assert!(h.contains(&psi.eval(x)));
            }
            // locate inverts element
            for (s1, s2, s3) in h.params().step_by(5) {
                assert_eq!(h.locate(&h.element(s1, s2, s3)), Some((s1, s2, s3)));
            }
        }
    }
}
