//! Spectra checked against nalgebra's general eigen solver and against the
//! invariants of the assembled Jacobians.

use fvs_spectra::jacobian::jac_plus_conservative;
use fvs_spectra::spectral::{
    classify_spectrum, closed_form_coeffs, cubic_discriminant, matrix_invariants, solve_cubic, CharCoeffs,
    Classification, Eigenvalues,
};
use fvs_spectra::{GasParams, Mat3, PrimitiveState, SchemeId};
use nalgebra::Matrix3;
use proptest::prelude::*;

fn to_nalgebra(m: &Mat3) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| m[(i, j)])
}

/// nalgebra eigenvalues, real parts ascending, imaginary parts alongside.
fn oracle_eigenvalues(m: &Mat3) -> Vec<(f64, f64)> {
    let mut ev: Vec<(f64, f64)> = to_nalgebra(m).complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect();
    ev.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    ev
}

fn companion(c: &CharCoeffs) -> Mat3 {
    // mu^3 − T mu^2 + S mu − D
    Mat3::from_rows([[0.0, 0.0, c.d], [1.0, 0.0, -c.s], [0.0, 1.0, c.t]])
}

#[test]
fn cubic_solver_matches_nalgebra_on_jacobians() {
    for scheme in SchemeId::ALL {
        for g in [1.1, 1.4, 5.0 / 3.0, 2.2, 2.9] {
            for m in [-0.95, -0.6, -0.2, 0.0, 0.3, 0.7, 0.95] {
                let gas = GasParams::new(g).unwrap();
                let j = jac_plus_conservative(&PrimitiveState::new(1.0, 1.0, m).unwrap(), gas, scheme).unwrap();
                let report = solve_cubic(&matrix_invariants(&j));
                let oracle = oracle_eigenvalues(&j);
                let scale = oracle.iter().map(|z| z.0.hypot(z.1)).fold(0.0, f64::max);
                match report.eigenvalues {
                    Eigenvalues::Real(mu) => {
                        for (got, want) in mu.iter().zip(&oracle) {
                            assert!((got - want.0).abs() < 1e-7 * scale, "{scheme} g={g} M={m}: {mu:?} vs {oracle:?}");
                            assert!(want.1.abs() < 1e-7 * scale);
                        }
                    }
                    Eigenvalues::ComplexPair { .. } => panic!("{scheme} g={g} M={m}: unexpected complex pair"),
                }
            }
        }
    }
}

#[test]
fn closed_forms_agree_with_assembled_invariants() {
    for scheme in SchemeId::ALL {
        for g in [1.05, 1.4, 2.0, 3.0] {
            for m in [-0.9, -0.45, 0.1, 0.8] {
                for a in [0.5, 1.0, 2.0] {
                    let gas = GasParams::new(g).unwrap();
                    let j = jac_plus_conservative(&PrimitiveState::new(1.3, a, m).unwrap(), gas, scheme).unwrap();
                    let inv = matrix_invariants(&j);
                    let cf = closed_form_coeffs(scheme, g, m, a).unwrap();
                    let tol = |x: f64, y: f64, scale: f64| (x - y).abs() <= 1e-12 * scale.max(1e-300);
                    assert!(tol(inv.t, cf.t, a), "{scheme} T g={g} M={m} a={a}");
                    assert!(tol(inv.s, cf.s, a * a), "{scheme} S g={g} M={m} a={a}");
                    assert!(tol(inv.d, cf.d, a * a * a), "{scheme} D g={g} M={m} a={a}");
                }
            }
        }
    }
}

#[test]
fn classification_is_invariant_under_sound_speed_scaling() {
    for scheme in SchemeId::ALL {
        for m in [-0.97, -0.5, 0.0, 0.5, 0.97] {
            let base = classify_spectrum(scheme, 1.4, m, 1.0).unwrap().classification;
            for a in [0.01, 0.3, 7.0, 250.0] {
                assert_eq!(classify_spectrum(scheme, 1.4, m, a).unwrap().classification, base, "{scheme} M={m} a={a}");
            }
        }
    }
}

#[test]
fn supersonic_and_invalid_inputs_are_rejected() {
    assert!(classify_spectrum(SchemeId::VanLeer, 1.4, 1.0, 1.0).is_err());
    assert!(classify_spectrum(SchemeId::VanLeer, 1.0, 0.2, 1.0).is_err());
    assert!(classify_spectrum(SchemeId::AusmSecond, 1.4, 0.2, 0.0).is_err());
    assert!(classify_spectrum(SchemeId::AusmSecond, 3.5, 0.2, 1.0).is_err());
}

#[test]
fn complex_pair_is_detected() {
    // (mu − 1)(mu^2 + 1) = mu^3 − mu^2 + mu − 1
    let c = CharCoeffs::new(1.0, 1.0, 1.0);
    let r = solve_cubic(&c);
    assert_eq!(r.classification, Classification::ComplexPair);
    assert!(cubic_discriminant(&c) < 0.0);
    match r.eigenvalues {
        Eigenvalues::ComplexPair { real, re, im } => {
            assert!((real - 1.0).abs() < 1e-12 && re.abs() < 1e-12 && (im.abs() - 1.0).abs() < 1e-12);
        }
        other => panic!("expected complex pair, got {other:?}"),
    }
}

proptest! {
    #[test]
    fn real_roots_recovered_from_coefficients(r0 in -5.0f64..5.0, r1 in -5.0f64..5.0, r2 in -5.0f64..5.0) {
        let c = CharCoeffs::new(r0 + r1 + r2, r0 * r1 + r1 * r2 + r0 * r2, r0 * r1 * r2);
        let oracle = oracle_eigenvalues(&companion(&c));
        let report = solve_cubic(&c);
        let scale = 1.0 + r0.abs().max(r1.abs()).max(r2.abs());
        match report.eigenvalues {
            Eigenvalues::Real(mu) => {
                for (got, want) in mu.iter().zip(&oracle) {
                    // Clustered roots are only determined to about cbrt(eps).
                    prop_assert!((got - want.0).abs() < 1e-4 * scale, "{:?} vs {:?}", mu, oracle);
                }
            }
            Eigenvalues::ComplexPair { real, im, .. } => {
                // Only possible for a near-multiple root perturbed by rounding.
                prop_assert!(im.abs() < 1e-4 * scale, "spurious pair {} ± {}i", real, im);
            }
        }
    }

    #[test]
    fn complex_pairs_recovered(x in -3.0f64..3.0, re in -3.0f64..3.0, im in 0.1f64..3.0) {
        // (mu − x)(mu^2 − 2 re mu + re^2 + im^2)
        let q = re * re + im * im;
        let c = CharCoeffs::new(x + 2.0 * re, q + 2.0 * re * x, x * q);
        match solve_cubic(&c).eigenvalues {
            Eigenvalues::ComplexPair { real, re: got_re, im: got_im } => {
                prop_assert!((real - x).abs() < 1e-8 * (1.0 + q));
                prop_assert!((got_re - re).abs() < 1e-8 * (1.0 + q));
                prop_assert!((got_im.abs() - im).abs() < 1e-8 * (1.0 + q));
            }
            other => prop_assert!(false, "expected a complex pair, got {:?}", other),
        }
    }
}
