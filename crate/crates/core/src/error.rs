use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ratio of specific heats must exceed 1, got gamma = {0}")]
    InvalidGamma(f64),

    #[error("non-physical state: {0}")]
    NonPhysical(String),

    /// Split-flux Jacobians and spectra are only analysed on |M| < 1.
    #[error("Mach number {0} is outside the subsonic range |M| < 1")]
    NotSubsonic(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("no root of the AUSM-linear S bracket in (-1, 0) for gamma = {0}")]
    NoRootInInterval(f64),

    #[error("positivity lost in cell {cell} at t = {time}: rho = {rho}, p = {p}")]
    Positivity {
        cell: usize,
        time: f64,
        rho: f64,
        p: f64,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Validation failures (bad input) as opposed to runtime failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidGamma(_)
                | Error::NonPhysical(_)
                | Error::NotSubsonic(_)
                | Error::InvalidParameter(_)
                | Error::Parse(_)
        )
    }
}
