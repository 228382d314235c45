//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("dimension mismatch: {what}")]
    Dimension { what: String },
    #[error("map does not respect relations: {what}")]
    IllDefined { what: String },
    #[error("internal inconsistency: {what}")]
    InternalInconsistency { what: String },
}

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("not a cocycle")]
    NotACocycle,
}

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error("no admissible generic vertex placement after {attempts} seeded draws")]
    GenericityExhausted { attempts: u32 },
    #[error("complex has dimension {dim}, larger than requested ambient half-dimension {n}")]
    DimensionTooLarge { dim: usize, n: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Error)]
pub enum TowerError {
    #[error("tower window malformed: {0}")]
    Malformed(String),
    #[error("difference of lifts is odd at level {level}, coordinate {coord}: input was not a mod-2 thread")]
    OddDifference { level: usize, coord: usize },
    #[error("not a compatible mod-2 thread at level {level}")]
    NotAThread { level: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}
