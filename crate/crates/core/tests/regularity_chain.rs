use monoquad::audit::{kvn_fixture, AuditConstants};
use monoquad::harmonic::norm_qm;
use monoquad::regularity::{build_atoms, kvn_energy_increment, project, smooth_box_approx};

#[test]
fn kvn_then_project_then_smooth_boxes() {
    let (fs, psi0, delta, res) = kvn_fixture();
    let (psi, rep) = kvn_energy_increment(&fs, &psi0, delta, res, &AuditConstants::default()).unwrap();
    assert!(rep.iterations <= rep.budget);
    assert!(rep.energies.windows(2).all(|w| w[1] >= w[0] - 1e-12));

    let atoms = build_atoms(&psi, res).unwrap();
    for (f, &reported) in fs.iter().zip(&rep.residual_qm) {
        let g = f.sub(&project(&atoms, f).unwrap()).unwrap();
        let n = norm_qm(&g).value;
        assert!((n - reported).abs() <= 1e-9);
        assert!(n <= delta + 1e-12);
    }

    // every coarse atom is covered by its smooth box on the orbit
    let coarse = build_atoms(&psi, 2).unwrap();
    for (key, xs) in coarse.keys.iter().zip(&coarse.members) {
        let sb = smooth_box_approx(psi.d(), 2, key, 0.5).unwrap();
        assert_eq!(sb.verify_orbit(&psi).violations, 0);
        let phi = sb.compose(&psi);
        for &x in xs {
            assert!(phi.values[x as usize].re >= 1.0 - 1e-12);
        }
    }
}
