use cocycle_engine::CocycleError;
use lattice_core::LatticeError;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum BuildError {
    /// Two ways of reaching the same pattern give different potential differences.
    #[error("inconsistent cocycle values: {expected} along the tree, {found} on the edge {from} -> {to}")]
    Consistency { from: String, to: String, expected: f64, found: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("continuity radius: {0}")]
    Radius(String),
    #[error("no admissible symbol fills site {site}: the space is not single-site fillable")]
    FillFailure { site: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

pub type Result<T> = std::result::Result<T, BuildError>;
