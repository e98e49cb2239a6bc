use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("site {site} out of range for a chain of {sites} sites")]
    SiteOutOfRange { site: usize, sites: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("operator is not Hermitian (deviation {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("eigensolver did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error("requires an even number of sites, got {0}")]
    OddLength(usize),

    #[error("Hilbert space of dimension {dim} exceeds the limit {limit}")]
    Overflow { dim: u128, limit: usize },

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("no local-unitary mapping found: {0}")]
    UnsatisfiedMapping(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
