use thiserror::Error;

/// Errors raised when an operation is called outside its domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} not strictly increasing at index {index}")]
    NotIncreasing { field: &'static str, index: usize },

    #[error("{field} out of range at index {index}: {reason}")]
    OutOfRange {
        field: &'static str,
        index: usize,
        reason: &'static str,
    },

    #[error("Dirac parameter must be nonnegative, got {0}")]
    NegativeDirac(f64),

    #[error("{0} requires a nonempty family")]
    EmptyFamily(&'static str),

    #[error("parameter {name} = {value} outside {expected}")]
    Parameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("the sup-T construction requires a left-continuous t-norm; {0} is not")]
    UnsupportedTNorm(&'static str),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("point index {index} out of range for a space of {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("metric violates {axiom} at {witness}")]
    Metric { axiom: &'static str, witness: String },

    #[error("element {element} of cover {cover} is not open")]
    NotOpen { cover: usize, element: usize },

    #[error("{0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
