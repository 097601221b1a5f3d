use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("shape mismatch: expected {expected} qubits, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid oracle spec: {0}")]
    InvalidSpec(String),

    #[error("invalid basis label {label:?}: {reason}")]
    InvalidLabel { label: String, reason: String },

    #[error("invalid TSP instance: {0}")]
    InvalidInstance(String),

    #[error("integer overflow evaluating {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
