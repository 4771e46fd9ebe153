use monoquad::counting::{census_quadruples, t_op, Coloring};
use monoquad::harmonic::{add_invert, add_transform, norm_qm, norm_u2_plus, norm_u3_plus};
use monoquad::search::{count_monochromatic, find_violation, interval_backtrack, SearchOutcome};
use monoquad::{FieldCtx, Signal, C64};
use proptest::prelude::*;

const PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];

fn signal(p: u64, raw: &[(f64, f64)]) -> Signal {
    let ctx = FieldCtx::new(p).unwrap();
    Signal::from_fn(&ctx, |x| {
        let (a, b) = raw[x as usize % raw.len()];
        C64::new(a, b)
    })
}

fn values() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 17)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inversion_and_parseval(i in 0..PRIMES.len(), raw in values()) {
        let f = signal(PRIMES[i], &raw);
        let spec = add_transform(&f);
        prop_assert!(add_invert(&spec).max_abs_diff(&f) <= 1e-10);
        let energy: f64 = spec.coeffs.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((energy - f.l2_sq()).abs() <= 1e-9);
    }

    #[test]
    fn norm_chain(i in 0..PRIMES.len(), raw in values()) {
        let f = signal(PRIMES[i], &raw);
        let (a, b, c) = (norm_u2_plus(&f).value, norm_u3_plus(&f).value, norm_qm(&f).value);
        prop_assert!(a <= b + 1e-9 && b <= c + 1e-9 && c <= f.l1() + 1e-9);
    }

    #[test]
    fn t_is_bounded_by_sup_norms(i in 0..PRIMES.len(), raw in values(), shift in 0usize..17) {
        let p = PRIMES[i];
        let mut rot = raw.clone();
        rot.rotate_left(shift);
        let (f, g) = (signal(p, &raw), signal(p, &rot));
        let t = t_op(&f, &g, &f, &g).unwrap().norm();
        prop_assert!(t <= f.linf().powi(2) * g.linf().powi(2) + 1e-12);
    }

    #[test]
    fn census_matches_pair_count(i in 0..4usize, colors in prop::collection::vec(0u8..3, 13)) {
        let p = PRIMES[i];
        let cs = &colors[..p as usize];
        let ctx = FieldCtx::new(p).unwrap();
        let rep = census_quadruples(&ctx, &Coloring::total(3, cs.iter().map(|&c| c as usize).collect()).unwrap()).unwrap();
        prop_assert_eq!(rep.total, count_monochromatic(p, cs));
        prop_assert_eq!(rep.per_color.iter().sum::<u64>(), rep.total);
    }

    #[test]
    fn search_agrees_with_checker(n in 1usize..24, distinct in any::<bool>(), colors in prop::collection::vec(0u8..2, 24)) {
        // a random colouring is a certificate only if the search also finds one
        if find_violation(&colors[..n], distinct).is_none() {
            prop_assert!(interval_backtrack(n, 2, distinct, u64::MAX).unwrap().is_sat());
        }
        if let SearchOutcome::Sat { coloring, .. } = interval_backtrack(n, 2, distinct, u64::MAX).unwrap() {
            prop_assert!(find_violation(&coloring, distinct).is_none());
        }
    }
}
