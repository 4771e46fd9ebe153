//! Small numeric helpers shared by the kernels.

use num_complex::Complex64;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Pairwise (tree) summation. Error grows like log n instead of n.
pub fn pairwise_sum(xs: &[C64]) -> C64 {
    const LEAF: usize = 16;
    if xs.len() <= LEAF {
        let mut acc = ZERO;
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn pairwise_sum_real(xs: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_real(&xs[..mid]) + pairwise_sum_real(&xs[mid..])
}

pub fn pairwise_sum_by<F: Fn(usize) -> C64>(n: usize, f: F) -> C64 {
    fn go<F: Fn(usize) -> C64>(lo: usize, hi: usize, f: &F) -> C64 {
        if hi - lo <= 16 {
            let mut acc = ZERO;
            for i in lo..hi {
                acc += f(i);
            }
            return acc;
        }
        let mid = lo + (hi - lo) / 2;
        go(lo, mid, f) + go(mid, hi, f)
    }
    go(0, n, &f)
}

/// Floor of the square root of `n`, exact.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn smallest_factor(n: u64) -> Option<u64> {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_matches_squares() {
        for n in 0u128..5000 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        let big = 18u128 * 1_000_000u128.pow(4);
        let r = isqrt(big);
        assert!(r * r <= big && (r + 1) * (r + 1) > big);
    }

    #[test]
    fn pairwise_agrees_with_naive() {
        let xs: Vec<C64> = (0..1000).map(|i| C64::new(i as f64, -(i as f64) / 3.0)).collect();
        let s = pairwise_sum(&xs);
        assert!((s.re - 499500.0).abs() < 1e-9);
        let t = pairwise_sum_by(xs.len(), |i| xs[i]);
        assert!((s - t).norm() < 1e-9);
    }
}
