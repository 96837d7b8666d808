use thiserror::Error;

use crate::element::Family;

/// Errors produced by element construction and semigroup operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed element: {0}")]
    MalformedElement(String),

    #[error("degree mismatch: left operand has degree {left}, right has degree {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("operand is outside the {family:?} family: {element}")]
    OutsideFamily { family: Family, element: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("element at index {0} is not an idempotent")]
    NotIdempotent(usize),

    #[error("the point set is not invariant for this element")]
    NotInvariant,

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unsupported universe: {0}")]
    UnsupportedUniverse(String),

    #[error("subset is not a closed inverse subsemigroup: {0}")]
    NotClosedInverse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
