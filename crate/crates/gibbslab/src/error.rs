use cocycle_engine::CocycleError;
use lattice_core::LatticeError;
use marker_lab::MarkerError;
use model_zoo::ZooError;
use representation_builders::BuildError;
use thiserror::Error;

/// Everything that ends a run before a report is produced. All of these exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Marker(#[from] MarkerError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
