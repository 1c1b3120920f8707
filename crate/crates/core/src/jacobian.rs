//! Jacobians of the positive split fluxes.
//!
//! `∂F⁺/∂W` is assembled from the chain rule on `(ρ, a, M)`; the conservative
//! Jacobian is `∂F⁺/∂U = ∂F⁺/∂W · ∂W/∂U`. The closed-form conservative entries,
//! in which the density cancels, live in [`printed`] and are kept as an
//! independent second route.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat3::Mat3;
use crate::splitting::{Flux3, SchemeId};
use crate::state::{jac_w_of_u, ConservativeState, GasParams, PrimitiveState};

pub mod printed;

/// Default central-difference step.
pub const FD_STEP: f64 = 1e-6;
/// Half step used for the Richardson convergence check.
pub const FD_STEP_RICHARDSON: f64 = 5e-7;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JacobianPair {
    pub in_w: Mat3,
    pub in_u: Mat3,
}

pub(crate) fn require_subsonic(mach: f64) -> Result<()> {
    if mach.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::NotSubsonic(mach))
    }
}

/// `∂F⁺/∂(ρ, a, M)` for `|M| < 1`.
pub fn jac_plus_primitive(w: &PrimitiveState, gas: GasParams, scheme: SchemeId) -> Result<Mat3> {
    require_subsonic(w.mach())?;
    let (rho, a, m, g) = (w.rho(), w.a(), w.mach(), gas.gamma());
    let mp = 0.25 * (m + 1.0) * (m + 1.0);
    let half_mp1 = 0.5 * (m + 1.0);

    // mass row: K = ρaM⁺ with K_ρ = aM⁺, K_a = ρM⁺, K_M = ρa(M+1)/2
    let mass = [a * mp, rho * mp, rho * a * half_mp1];

    if scheme == SchemeId::VanLeer {
        let d = (g - 1.0) * m + 2.0;
        let c3 = 1.0 / (2.0 * (g * g - 1.0));
        return Ok(Mat3([
            mass,
            [
                a * a * mp * d / g,
                2.0 * rho * a * mp * d / g,
                rho * a * a / g * (half_mp1 * d + mp * (g - 1.0)),
            ],
            [
                a * a * a * mp * d * d * c3,
                3.0 * rho * a * a * mp * d * d * c3,
                rho * a * a * a * c3 * (half_mp1 * d * d + 2.0 * mp * d * (g - 1.0)),
            ],
        ]));
    }

    let gm1 = g - 1.0;
    let m1 = m + 1.0;
    let energy = [
        a * a * a * m1 * m1 * (gm1 * m * m + 2.0) / (8.0 * gm1),
        3.0 * a * a * m1 * m1 * rho * (gm1 * m * m + 2.0) / (8.0 * gm1),
        a * a * a * m1 * rho * (2.0 * gm1 * m * m + gm1 * m + 2.0) / (4.0 * gm1),
    ];
    let momentum = match scheme {
        SchemeId::AusmLinear => {
            let q = g * m * m + g * m + 2.0;
            [
                a * a * m1 * q / (4.0 * g),
                a * m1 * rho * q / (2.0 * g),
                a * a * rho * (g + 3.0 * g * m * m + 4.0 * g * m + 2.0) / (4.0 * g),
            ]
        }
        _ => {
            let d = gm1 * m + 2.0;
            [
                a * a * m1 * m1 * d / (4.0 * g),
                a * m1 * m1 * rho * d / (2.0 * g),
                a * a * m1 * rho * (g + 3.0 * gm1 * m + 3.0) / (4.0 * g),
            ]
        }
    };
    Ok(Mat3([mass, momentum, energy]))
}

/// `∂F⁺/∂U = ∂F⁺/∂W · 𝔗` for `|M| < 1`.
pub fn jac_plus_conservative(w: &PrimitiveState, gas: GasParams, scheme: SchemeId) -> Result<Mat3> {
    Ok(jac_plus_primitive(w, gas, scheme)? * jac_w_of_u(w, gas))
}

pub fn jacobian_pair(w: &PrimitiveState, gas: GasParams, scheme: SchemeId) -> Result<JacobianPair> {
    let in_w = jac_plus_primitive(w, gas, scheme)?;
    Ok(JacobianPair {
        in_w,
        in_u: in_w * jac_w_of_u(w, gas),
    })
}

/// Full Euler flux Jacobian `∂F/∂U`; eigenvalues `u − a`, `u`, `u + a`.
pub fn jac_full(w: &PrimitiveState, gas: GasParams) -> Mat3 {
    let g = gas.gamma();
    let u = w.velocity();
    let h = w.specific_enthalpy(gas);
    Mat3([
        [0.0, 1.0, 0.0],
        [0.5 * (g - 3.0) * u * u, (3.0 - g) * u, g - 1.0],
        [u * (0.5 * (g - 1.0) * u * u - h), h - (g - 1.0) * u * u, g * u],
    ])
}

/// Central-difference Jacobian of a map `ℝ³ → ℝ³`.
///
/// Column `j` uses the step `h·max(1, |x_j|)`. Accuracy is `O(h²)` for smooth
/// maps and degrades to `O(h)` when the stencil straddles a kink (e.g. `M = ±1`).
pub fn fd_jacobian_vec<F>(f: F, x: [f64; 3], h: f64) -> Result<Mat3>
where
    F: Fn([f64; 3]) -> Result<[f64; 3]>,
{
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidParameter(format!("finite-difference step must be positive, got {h}")));
    }
    let mut cols = [[0.0; 3]; 3];
    for (j, col) in cols.iter_mut().enumerate() {
        let step = h * x[j].abs().max(1.0);
        let mut xp = x;
        let mut xm = x;
        xp[j] += step;
        xm[j] -= step;
        let fp = f(xp)?;
        let fm = f(xm)?;
        let width = xp[j] - xm[j];
        for i in 0..3 {
            col[i] = (fp[i] - fm[i]) / width;
        }
    }
    Ok(Mat3::from_cols(cols))
}

/// Central-difference Jacobian of a state-to-flux map in conservative variables.
pub fn fd_jacobian<F>(f: F, u: &ConservativeState, h: f64) -> Result<Mat3>
where
    F: Fn(&ConservativeState) -> Result<Flux3>,
{
    fd_jacobian_vec(|x| f(&ConservativeState::from_array(x)).map(|fl| fl.as_array()), u.as_array(), h)
}

/// `max |A − B| / max |B|`, the residual reported next to analytic Jacobians.
pub fn relative_residual(analytic: &Mat3, reference: &Mat3) -> f64 {
    let scale = reference.max_abs().max(f64::MIN_POSITIVE);
    (*analytic - *reference).max_abs() / scale
}
