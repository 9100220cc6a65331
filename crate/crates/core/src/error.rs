use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("conjugate is unbounded at y = {y} (searched x up to {searched_to:e})")]
    UnboundedConjugate { y: f64, searched_to: f64 },

    #[error("`{name}` is not a Young function: {invariant} fails at t = {at:e}")]
    InvalidYoung {
        name: String,
        invariant: &'static str,
        at: f64,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("g = {0} is the identity, which is a torsion element")]
    Torsion(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("n = {n} does not exceed the separation index; the smallest admissible n is {min}")]
    Separation { n: usize, min: usize },

    #[error("horizon {horizon} must exceed the separation index {index} (use horizon >= {})", index + 1)]
    Horizon { horizon: usize, index: usize },

    #[error("weight `{name}` is {value} at {point}; weights must be finite and positive")]
    InvalidWeight {
        name: String,
        point: String,
        value: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
