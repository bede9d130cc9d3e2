use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid capacity: {0}")]
    InvalidCapacity(String),

    #[error("invalid functional: {0}")]
    InvalidFunctional(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("partial functional is not order-consistent: {0}")]
    Inconsistent(String),

    #[error("point already lies in the weakly additive span")]
    AlreadyInSpan,

    #[error("value {value} lies outside the admissible interval [{lower}, {upper}]")]
    OutsideInterval { value: f64, lower: f64, upper: f64 },

    #[error("conflicting values on one unit line: {0} vs {1}")]
    ConflictingValues(f64, f64),

    #[error("negative unit value {0}")]
    NegativeUnitValue(f64),

    #[error("family orbit at the unit is unbounded: norm {norm} exceeds cap {cap}")]
    Unbounded { norm: f64, cap: f64 },

    #[error("sequence diverges at probe {probe}: tail spread {spread}")]
    Divergence { probe: usize, spread: f64 },

    #[error("sequence too short: {len} terms, need at least {min}")]
    SequenceTooShort { len: usize, min: usize },

    #[error("empty {0}")]
    Empty(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
