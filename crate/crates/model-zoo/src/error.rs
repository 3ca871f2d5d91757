use lattice_core::{LatticeError, Site};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ZooError {
    #[error("unknown space {0:?}; expected full(q,d), hardcore(d), coloring(q,d) or sunny(d)")]
    UnknownSpace(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The colors around `site` admit no height function.
    #[error("no consistent height at {site}")]
    Inconsistent { site: Site },
    #[error("region is not connected or misses the anchor")]
    Disconnected,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, ZooError>;
