//! Van Leer and AUSM flux-vector splittings for the one-dimensional Euler
//! equations, with tools to check the spectral structure of the split-flux
//! Jacobians.
//!
//! * [`state`]: primitive `(ρ, a, M)` and conservative `(ρ, ρu, E)` states.
//! * [`splitting`]: the full flux and the split fluxes `F⁺`, `F⁻`.
//! * [`jacobian`]: analytic and finite-difference Jacobians of `F⁺`.
//! * [`spectral`]: characteristic invariants, discriminants, eigenvalue signs.
//! * [`exactpoly`]: rational polynomials and Sturm root counting.
//! * [`scanlab`]: grid and random parameter scans, bounded minimisation.
//! * [`fvs1d`]: a first-order finite-volume solver.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod exactpoly;
pub mod fvs1d;
pub mod jacobian;
pub mod scanlab;
pub mod mat3;
pub mod spectral;
pub mod splitting;
pub mod state;
pub mod text;

pub use error::{Error, Result};
pub use mat3::Mat3;
pub use spectral::{CharCoeffs, Classification, SpectrumReport};
pub use splitting::{Flux3, SchemeId};
pub use state::{ConservativeState, GasParams, PrimitiveState};
