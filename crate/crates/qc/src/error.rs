//! Crate-wide error type.

use thiserror::Error;

use crate::circuit::Violation;
use crate::qasm::ParseError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix entries must be finite (found NaN or infinity)")]
    NonFiniteEntry,

    #[error("matrix is not unitary (max deviation from identity {max_deviation:.3e})")]
    NotUnitary { max_deviation: f64 },

    #[error("capacity exceeded: requested {requested}, limit {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("unknown gate \"{name}\"")]
    UnknownGate { name: String },

    #[error("gate \"{gate}\" takes {expected} parameter(s), got {actual}")]
    ParamCount {
        gate: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("invalid circuit: {0}")]
    Validation(#[from] Violation),
}

pub type Result<T> = std::result::Result<T, Error>;
