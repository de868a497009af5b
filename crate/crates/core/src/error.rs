//! Crate-wide error type and result alias.

use thiserror::Error;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bit strings contain only '0' and '1', found {found:?} at position {pos}")]
    InvalidBitChar { found: char, pos: usize },

    #[error("expected {expected} parameter values, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("value {value} is not admissible for field {field}")]
    ValueOutOfRange { value: i64, field: usize },

    #[error("input too short: {len} bits, need at least {min}")]
    StringTooShort { len: usize, min: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("insufficient data for {what}: need {needed}, got {got}")]
    InsufficientData {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("malformed ensemble: {0}")]
    MalformedEnsemble(String),

    #[error("no system at index {index} (ensemble has {count})")]
    SystemIndexOutOfRange { index: usize, count: usize },

    #[error("observer capacity must be positive, got {capacity_bits}")]
    InvalidCapacity { capacity_bits: f64 },

    #[error("closeness factor must exceed 1, got {factor}")]
    InvalidFactor { factor: f64 },

    #[error("complexity estimate must be non-negative, got {value_bits}")]
    InvalidEstimate { value_bits: f64 },

    #[error("temperature must be positive, got {kelvin} K")]
    NonPositiveTemperature { kelvin: f64 },

    #[error("bit count must be non-negative and finite, got {bits}")]
    InvalidBitCount { bits: f64 },

    #[error("polarization mixedness must lie in [0, 1], got {value}")]
    MixednessOutOfRange { value: f64 },

    #[error("record of {record_bits} bits can never fit capacity of {capacity_bits} bits")]
    RecordExceedsCapacity {
        record_bits: usize,
        capacity_bits: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed code: {0}")]
    MalformedCode(String),
}
