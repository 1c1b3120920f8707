//! `F⁺ + F⁻ = F` and the supersonic limits, over the admissible box.

use fvs_spectra::scanlab::uniform;
use fvs_spectra::splitting::{full_flux, split_flux_minus, split_flux_plus};
use fvs_spectra::{Flux3, GasParams, PrimitiveState, SchemeId};

fn random_states(seed: u64, n: u64) -> impl Iterator<Item = (f64, PrimitiveState)> {
    (0..n).map(move |i| {
        let r = |j: u64| uniform(seed, 4 * i + j);
        let gamma = 1.0 + 2.0 * r(0).max(1e-6);
        let rho = 0.1 + 9.9 * r(1);
        let a = 0.1 + 9.9 * r(2);
        let mach = -2.0 + 4.0 * r(3);
        (gamma, PrimitiveState::new(rho, a, mach).unwrap())
    })
}

fn defect(w: &PrimitiveState, gas: GasParams, scheme: SchemeId) -> (f64, f64) {
    let f = full_flux(w, gas);
    let (plus, minus) = (split_flux_plus(w, gas, scheme), split_flux_minus(w, gas, scheme));
    let scale = f.max_abs().max(plus.max_abs()).max(minus.max_abs());
    ((plus + minus - f).max_abs(), scale)
}

#[test]
fn split_parts_sum_to_full_flux_on_unit_scale_states() {
    // States of order one: the absolute 1e-14 bound is meaningful here.
    for (gamma, w) in random_states(7, 10_000) {
        let gas = GasParams::new(gamma).unwrap();
        let w = PrimitiveState::new(w.rho() / 10.0 + 0.1, 1.0, w.mach()).unwrap();
        for scheme in SchemeId::ALL {
            let (d, _) = defect(&w, gas, scheme);
            assert!(d <= 1e-14, "{scheme} gamma={gamma} {:?}: {d:e}", w.as_array());
        }
    }
}

#[test]
fn split_parts_sum_to_full_flux_over_the_box() {
    let mut worst_abs: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    for (gamma, w) in random_states(11, 10_000) {
        let gas = GasParams::new(gamma).unwrap();
        for scheme in SchemeId::ALL {
            let (d, scale) = defect(&w, gas, scheme);
            worst_abs = worst_abs.max(d);
            worst_rel = worst_rel.max(d / scale);
        }
    }
    println!("worst absolute defect {worst_abs:e}, relative {worst_rel:e}");
    // Energy fluxes reach ~1e4 here, so the bound is a few ulps of the
    // largest of |F|, |F⁺|, |F⁻|, not an absolute one.
    assert!(worst_rel <= 4.0 * f64::EPSILON, "relative defect {worst_rel:e}");
}

#[test]
fn supersonic_branches_are_one_sided() {
    let gas = GasParams::air();
    for scheme in SchemeId::ALL {
        for m in [1.0, 1.2, 3.0] {
            let up = PrimitiveState::new(0.7, 1.3, m).unwrap();
            assert_eq!(split_flux_minus(&up, gas, scheme), Flux3::ZERO, "{scheme} M={m}");
            assert_eq!(split_flux_plus(&up, gas, scheme), full_flux(&up, gas), "{scheme} M={m}");
            let down = PrimitiveState::new(0.7, 1.3, -m).unwrap();
            assert_eq!(split_flux_plus(&down, gas, scheme), Flux3::ZERO, "{scheme} M={}", -m);
        }
    }
}

#[test]
fn split_flux_is_continuous_at_the_sonic_points() {
    let gas = GasParams::new(1.4).unwrap();
    for scheme in SchemeId::ALL {
        for m in [-1.0, 1.0] {
            let at = split_flux_plus(&PrimitiveState::new(1.0, 1.0, m).unwrap(), gas, scheme);
            for dm in [1e-9, -1e-9] {
                let near = split_flux_plus(&PrimitiveState::new(1.0, 1.0, m + dm).unwrap(), gas, scheme);
                assert!((near - at).max_abs() < 1e-7, "{scheme} jump at M={m}");
            }
        }
    }
}
