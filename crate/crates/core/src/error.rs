use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class; the CLI maps these onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Convergence,
    Regime,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma function pole at non-positive integer {0}")]
    GammaPole(f64),

    #[error("invalid Bargmann index k = {k}: {reason}")]
    InvalidIndex { k: f64, reason: &'static str },

    #[error("series did not converge within {max_terms} terms")]
    SeriesNonConvergence { max_terms: usize },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("evaluation point |ζ| = {modulus} is outside the convergence radius {radius}")]
    OutsideRadius { modulus: f64, radius: f64 },

    #[error("truncation limit {limit} reached before the tail dropped below tolerance")]
    TruncationLimit { limit: usize },

    #[error("continuous spectrum: ω = {omega} does not exceed |g| = {g_abs}")]
    ContinuousSpectrum { omega: f64, g_abs: f64 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_) | Error::GammaPole(_) | Error::InvalidIndex { .. } => ErrorKind::Domain,
            Error::SeriesNonConvergence { .. }
            | Error::Quadrature(_)
            | Error::OutsideRadius { .. }
            | Error::TruncationLimit { .. } => ErrorKind::Convergence,
            Error::ContinuousSpectrum { .. } => ErrorKind::Regime,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
