//! The Euler flux and its Van Leer / AUSM splittings `F = F⁺ + F⁻`.
//!
//! All three schemes share the Mach splitting `M± = ±(M±1)²/4` on `|M| ≤ 1`.
//! They differ in how the momentum and energy components are built:
//!
//! * Van Leer: `F⁺ = ρaM⁺ (1, aD/γ, a²D²/(2(γ²−1)))` with `D = (γ−1)M + 2`.
//! * AUSM, linear pressure: `F⁺ = ρaM⁺ (1, u, ĥ) + (0, p(1+M)/2, 0)`.
//! * AUSM, second-order pressure: as above with `P⁺ = p(M+1)²(2−M)/4`.
//!
//! `ĥ = (E+p)/ρ` is the total enthalpy per unit mass; with it `F⁺ + F⁻ = F`
//! holds exactly for the AUSM variants.
//!
//! For `M > 1` every `F⁺` is the full flux and `F⁻` vanishes; for `M < −1` the
//! roles swap. The sonic points `M = ±1` take the subsonic formulas.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{GasParams, PrimitiveState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SchemeId {
    VanLeer,
    AusmLinear,
    AusmSecond,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [SchemeId::VanLeer, SchemeId::AusmLinear, SchemeId::AusmSecond];

    /// Command-line spelling.
    pub fn name(&self) -> &'static str {
        match self {
            SchemeId::VanLeer => "vanleer",
            SchemeId::AusmLinear => "ausm-lin",
            SchemeId::AusmSecond => "ausm-2nd",
        }
    }

    /// Pressure splitting used by the AUSM variants; `None` for Van Leer.
    pub fn pressure_order(&self) -> Option<PressureOrder> {
        match self {
            SchemeId::VanLeer => None,
            SchemeId::AusmLinear => Some(PressureOrder::Linear),
            SchemeId::AusmSecond => Some(PressureOrder::Second),
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vanleer" | "van-leer" | "vl" => Ok(SchemeId::VanLeer),
            "ausm-lin" | "ausm-linear" => Ok(SchemeId::AusmLinear),
            "ausm-2nd" | "ausm-second" => Ok(SchemeId::AusmSecond),
            other => Err(Error::Parse(format!(
                "unknown scheme '{other}' (expected vanleer, ausm-lin or ausm-2nd)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PressureOrder {
    Linear,
    Second,
}

/// Flux vector (mass, momentum, energy).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Flux3 {
    pub mass: f64,
    pub mom: f64,
    pub en: f64,
}

impl Flux3 {
    pub const ZERO: Flux3 = Flux3 {
        mass: 0.0,
        mom: 0.0,
        en: 0.0,
    };

    pub fn new(mass: f64, mom: f64, en: f64) -> Self {
        Flux3 { mass, mom, en }
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Flux3::new(v[0], v[1], v[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.mass, self.mom, self.en]
    }

    pub fn max_abs(&self) -> f64 {
        self.mass.abs().max(self.mom.abs()).max(self.en.abs())
    }
}

impl Add for Flux3 {
    type Output = Flux3;

    fn add(self, r: Flux3) -> Flux3 {
        Flux3::new(self.mass + r.mass, self.mom + r.mom, self.en + r.en)
    }
}

impl Sub for Flux3 {
    type Output = Flux3;

    fn sub(self, r: Flux3) -> Flux3 {
        Flux3::new(self.mass - r.mass, self.mom - r.mom, self.en - r.en)
    }
}

/// `F(U) = (ρu, ρu² + p, uH)`, `H = E + p` per unit volume.
pub fn full_flux(w: &PrimitiveState, gas: GasParams) -> Flux3 {
    let u = w.velocity();
    let p = w.pressure(gas);
    let rho = w.rho();
    Flux3::new(rho * u, rho * u * u + p, u * w.total_enthalpy(gas))
}

/// `(M⁺, M⁻)`, with `M⁺ + M⁻ = M` on every branch.
pub fn mach_split(m: f64) -> (f64, f64) {
    if m > 1.0 {
        (m, 0.0)
    } else if m < -1.0 {
        (0.0, m)
    } else {
        (0.25 * (m + 1.0) * (m + 1.0), -0.25 * (m - 1.0) * (m - 1.0))
    }
}

/// `(P⁺, P⁻)` for pressure `p` at Mach number `m`.
pub fn pressure_split(m: f64, p: f64, order: PressureOrder) -> (f64, f64) {
    if m > 1.0 {
        return (p, 0.0);
    }
    if m < -1.0 {
        return (0.0, p);
    }
    match order {
        PressureOrder::Linear => (0.5 * p * (1.0 + m), 0.5 * p * (1.0 - m)),
        PressureOrder::Second => (
            0.25 * p * (m + 1.0) * (m + 1.0) * (2.0 - m),
            0.25 * p * (m - 1.0) * (m - 1.0) * (2.0 + m),
        ),
    }
}

/// `F⁺` for the given scheme.
pub fn split_flux_plus(w: &PrimitiveState, gas: GasParams, scheme: SchemeId) -> Flux3 {
    let m = w.mach();
    if m > 1.0 {
        return full_flux(w, gas);
    }
    if m < -1.0 {
        return Flux3::ZERO;
    }
    let (rho, a, g) = (w.rho(), w.a(), gas.gamma());
    let (m_plus, _) = mach_split(m);
    let k = rho * a * m_plus;
    match scheme.pressure_order() {
        None => {
            let d = (g - 1.0) * m + 2.0;
            Flux3::new(k, k * a * d / g, k * a * a * d * d / (2.0 * (g * g - 1.0)))
        }
        Some(order) => {
            let (p_plus, _) = pressure_split(m, w.pressure(gas), order);
            Flux3::new(k, k * w.velocity() + p_plus, k * w.specific_enthalpy(gas))
        }
    }
}

/// `F⁻ = F − F⁺` on `|M| ≤ 1`; zero for `M > 1`, the full flux for `M < −1`.
pub fn split_flux_minus(w: &PrimitiveState, gas: GasParams, scheme: SchemeId) -> Flux3 {
    let m = w.mach();
    if m > 1.0 {
        return Flux3::ZERO;
    }
    if m < -1.0 {
        return full_flux(w, gas);
    }
    full_flux(w, gas) - split_flux_plus(w, gas, scheme)
}
