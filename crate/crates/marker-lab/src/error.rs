use cocycle_engine::CocycleError;
use lattice_core::LatticeError;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MarkerError {
    #[error("no marker pair found for n = {n} after {attempts} attempts")]
    SearchExhausted { n: usize, attempts: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("malformed marker data: {0}")]
    Parse(String),
    #[error("the pair must be one-dimensional, binary and finitely supported over the zero background")]
    NotFinitelySupported,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

pub type Result<T> = std::result::Result<T, MarkerError>;
