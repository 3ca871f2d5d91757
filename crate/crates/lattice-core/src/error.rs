use thiserror::Error;

use crate::site::Site;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("symbol index {index} is outside an alphabet of size {size}")]
    SymbolOutOfRange { index: usize, size: usize },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("dimension {0} is not supported (expected 1 or 2)")]
    BadDimension(usize),
    #[error("pattern has {symbols} symbols for a shape of {sites} sites")]
    LengthMismatch { sites: usize, symbols: usize },
    #[error("enumeration budget of {limit} exceeded")]
    Budget { limit: u64 },
    #[error("no admissible symbol at {site}: single-site fillability is falsified")]
    FillFailure { site: Site },
    #[error("no pivot path inside a window of {window} sites ({explored} states explored)")]
    NoPath { window: usize, explored: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LatticeError>;
