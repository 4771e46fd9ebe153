use monoquad::charsums::{mixed_sum_sweep, u3_box_sum, write_sweep_csv, SweepRow};
use monoquad::audit::{u3_box_cases, AuditConstants};
use monoquad::FieldCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Mean magnitude over 300 draws of (a, b, chi, chi', h) from the sweep sampler.
fn family_mean(p: u64) -> f64 {
    let ctx = FieldCtx::new(p).unwrap();
    let rows = mixed_sum_sweep(&ctx, 300, 1.0, &mut ChaCha8Rng::seed_from_u64(17)).unwrap();
    rows.iter().map(|r| r.magnitude).sum::<f64>() / rows.len() as f64
}

#[test]
fn mixed_sums_shrink_with_p() {
    let means: Vec<f64> = [31, 61, 101].into_iter().map(family_mean).collect();
    assert!(means.windows(2).all(|w| w[1] < w[0]), "{means:?}");
}

#[test]
fn sweep_csv_round_trips() {
    let ctx = FieldCtx::new(101).unwrap();
    let c = AuditConstants::default().mixed_sum_c;
    let rows = mixed_sum_sweep(&ctx, 25, c, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    let path = std::env::temp_dir().join(format!("monoquad-sweep-{}.csv", std::process::id()));
    write_sweep_csv(&rows, &path).unwrap();
    let back: Vec<SweepRow> = csv::Reader::from_path(&path).unwrap().deserialize().collect::<Result<_, _>>().unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(back.len(), rows.len());
    for (a, b) in rows.iter().zip(&back) {
        assert_eq!((a.a, a.b, a.k, a.k_prime, a.h), (b.a, b.b, b.k, b.k_prime, b.h));
        assert_eq!(a.magnitude, b.magnitude);
        assert!(b.slack >= 0.0);
    }
}

#[test]
fn box_sums_within_calibrated_budget() {
    let c = AuditConstants::default().u3_box_c;
    for p in [13u64, 31, 61] {
        let ctx = FieldCtx::new(p).unwrap();
        let pf = p as f64;
        for (chi, chi2, h) in u3_box_cases(&ctx) {
            let b = u3_box_sum(&ctx, chi, chi2, h).unwrap();
            let budget = c / pf.sqrt() + b.degenerate as f64 / (pf * pf * pf);
            assert!(b.value <= budget + 1e-12, "p={p}: {} > {budget}", b.value);
            assert!(b.value <= b.weil_bound);
        }
    }
}
