//! Ideal-gas states in primitive `(ρ, a, M)` and conservative `(ρ, ρu, E)` form,
//! and the transform between them.
//!
//! `E` and `H = E + p` are per unit volume; `e = p/(γ−1)` is the internal energy
//! per unit volume.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat3::Mat3;

/// Ideal-gas parameters. Only the ratio of specific heats enters the model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GasParams {
    gamma: f64,
}

impl GasParams {
    /// Rejects `γ ≤ 1`: the transform divides by `γ − 1`.
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 1.0) {
            return Err(Error::InvalidGamma(gamma));
        }
        Ok(GasParams { gamma })
    }

    pub fn air() -> Self {
        GasParams { gamma: 1.4 }
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `1/(γ(γ−1)) + M²/2`, the energy factor of the primitive-to-conservative map.
    #[inline]
    pub fn energy_factor(&self, mach: f64) -> f64 {
        let g = self.gamma;
        1.0 / (g * (g - 1.0)) + 0.5 * mach * mach
    }
}

/// Primitive state `W = (ρ, a, M)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrimitiveState {
    rho: f64,
    a: f64,
    mach: f64,
}

impl PrimitiveState {
    pub fn new(rho: f64, a: f64, mach: f64) -> Result<Self> {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::NonPhysical(format!("density must be positive, got {rho}")));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::NonPhysical(format!("sound speed must be positive, got {a}")));
        }
        if !mach.is_finite() {
            return Err(Error::NonPhysical(format!("Mach number must be finite, got {mach}")));
        }
        Ok(PrimitiveState { rho, a, mach })
    }

    /// Builds the state from density, velocity and pressure.
    pub fn from_rho_u_p(rho: f64, u: f64, p: f64, gas: GasParams) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::NonPhysical(format!("pressure must be positive, got {p}")));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::NonPhysical(format!("density must be positive, got {rho}")));
        }
        let a = (gas.gamma() * p / rho).sqrt();
        PrimitiveState::new(rho, a, u / a)
    }

    #[inline]
    pub fn rho(&self) -> f64 {
        self.rho
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn mach(&self) -> f64 {
        self.mach
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.rho, self.a, self.mach]
    }

    #[inline]
    pub fn velocity(&self) -> f64 {
        self.a * self.mach
    }

    #[inline]
    pub fn pressure(&self, gas: GasParams) -> f64 {
        self.rho * self.a * self.a / gas.gamma()
    }

    /// Internal energy per unit volume.
    #[inline]
    pub fn internal_energy(&self, gas: GasParams) -> f64 {
        self.pressure(gas) / (gas.gamma() - 1.0)
    }

    /// Total energy per unit volume.
    #[inline]
    pub fn total_energy(&self, gas: GasParams) -> f64 {
        self.rho * self.a * self.a * gas.energy_factor(self.mach)
    }

    /// Total enthalpy per unit volume, `E + p`.
    #[inline]
    pub fn total_enthalpy(&self, gas: GasParams) -> f64 {
        self.total_energy(gas) + self.pressure(gas)
    }

    /// Total enthalpy per unit mass, `(E + p)/ρ = a²/(γ−1) + u²/2`.
    #[inline]
    pub fn specific_enthalpy(&self, gas: GasParams) -> f64 {
        let u = self.velocity();
        self.a * self.a / (gas.gamma() - 1.0) + 0.5 * u * u
    }
}

/// Conservative state `U = (ρ, ρu, E)`.
///
/// Plain data: admissibility (`ρ > 0`, `p > 0`) is checked on conversion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConservativeState {
    pub rho: f64,
    pub mom: f64,
    pub energy: f64,
}

impl ConservativeState {
    pub fn new(rho: f64, mom: f64, energy: f64) -> Self {
        ConservativeState { rho, mom, energy }
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        ConservativeState::new(v[0], v[1], v[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.rho, self.mom, self.energy]
    }

    pub fn velocity(&self) -> f64 {
        self.mom / self.rho
    }

    /// `(γ−1)(E − ρu²/2)`; may be non-positive for inadmissible states.
    pub fn pressure(&self, gas: GasParams) -> f64 {
        (gas.gamma() - 1.0) * (self.energy - 0.5 * self.mom * self.mom / self.rho)
    }
}

/// `W → U`: `(ρ, ρaM, ρa²(1/(γ(γ−1)) + M²/2))`.
pub fn primitive_to_conservative(w: &PrimitiveState, gas: GasParams) -> ConservativeState {
    ConservativeState {
        rho: w.rho,
        mom: w.rho * w.a * w.mach,
        energy: w.total_energy(gas),
    }
}

/// `U → W` by the analytic inverse. Fails on `ρ ≤ 0` or a recovered `p ≤ 0`.
pub fn conservative_to_primitive(u: &ConservativeState, gas: GasParams) -> Result<PrimitiveState> {
    if !(u.rho.is_finite() && u.rho > 0.0) {
        return Err(Error::NonPhysical(format!("density must be positive, got {}", u.rho)));
    }
    let p = u.pressure(gas);
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::NonPhysical(format!(
            "recovered pressure must be positive, got {p} (E = {}, ρu²/2 = {})",
            u.energy,
            0.5 * u.mom * u.mom / u.rho
        )));
    }
    let vel = u.mom / u.rho;
    let a = (gas.gamma() * p / u.rho).sqrt();
    PrimitiveState::new(u.rho, a, vel / a)
}

/// `∂U/∂W`.
pub fn jac_u_of_w(w: &PrimitiveState, gas: GasParams) -> Mat3 {
    let (rho, a, m) = (w.rho, w.a, w.mach);
    let q = gas.energy_factor(m);
    Mat3([
        [1.0, 0.0, 0.0],
        [a * m, rho * m, rho * a],
        [a * a * q, 2.0 * rho * a * q, rho * a * a * m],
    ])
}

/// `∂W/∂U`, the inverse of [`jac_u_of_w`] in closed form.
pub fn jac_w_of_u(w: &PrimitiveState, gas: GasParams) -> Mat3 {
    let (rho, a, m) = (w.rho, w.a, w.mach);
    let gg = (gas.gamma() - 1.0) * gas.gamma();
    Mat3([
        [1.0, 0.0, 0.0],
        [
            a * (gg * m * m - 2.0) / (4.0 * rho),
            -gg * m / (2.0 * rho),
            gg / (2.0 * a * rho),
        ],
        [
            -(gg * m * m * m + 2.0 * m) / (4.0 * rho),
            (gg * m * m + 2.0) / (2.0 * a * rho),
            -gg * m / (2.0 * a * a * rho),
        ],
    ])
}

/// Closed-form `det(∂U/∂W) = −2ρ²a²/(γ(γ−1))`.
pub fn jac_u_of_w_det(w: &PrimitiveState, gas: GasParams) -> f64 {
    let g = gas.gamma();
    -2.0 * w.rho * w.rho * w.a * w.a / (g * (g - 1.0))
}
