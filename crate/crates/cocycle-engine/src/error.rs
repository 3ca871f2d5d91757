use lattice_core::LatticeError;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CocycleError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CocycleError>;
