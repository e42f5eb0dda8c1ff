use thiserror::Error;

/// Errors raised by constructions and validators in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    /// A parameter is outside the supported range.
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("dimension error: expected {expected}, got {actual}")]
    Dimension { expected: String, actual: usize },

    /// An enumeration would exceed the object budget.
    #[error("enumeration budget exceeded: {requested} objects requested, limit is {limit}")]
    Budget { requested: u128, limit: u128 },

    /// An input does not have the required combinatorial structure.
    #[error("structure error: {0}")]
    Structure(String),

    #[error("no equivalence: {0}")]
    NoEquivalence(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A consistency check that should be unreachable failed.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

pub(crate) fn parameter(msg: impl Into<String>) -> GeometryError {
    GeometryError::Parameter(msg.into())
}
