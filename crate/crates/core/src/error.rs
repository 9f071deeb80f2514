//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("degree {degree} out of range for a {dim}-dimensional complex")]
    DegreeOutOfRange { degree: usize, dim: usize },

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("cup-i index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("integer overflow in exact arithmetic; aborting rather than wrapping")]
    Overflow,

    #[error("complex is not connected")]
    NotConnected,

    #[error("no fundamental class: H_n(X;Z/2) is {found}-dimensional, expected 1")]
    NoFundamentalClass { found: usize },

    #[error("no orientation character: no twist yields top twisted homology Z")]
    NoOrientationCharacter,

    #[error(
        "ambiguous orientation character: {count} distinct twists yield top twisted homology Z"
    )]
    AmbiguousCharacter { count: usize },

    #[error("character enumeration bound exceeded: b_1 = {b1} > {bound}")]
    EnumerationBoundExceeded { b1: usize, bound: usize },

    #[error("Z/2 Poincare duality fails in degree {degree}: cap matrix rank deficit {deficit}")]
    DualityFails { degree: usize, deficit: usize },

    #[error("operation requires a {expected}-dimensional complex, got dimension {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("size bound exceeded: {0}")]
    SizeBoundExceeded(String),

    #[error("total class is not invertible: degree-0 component is not the unit")]
    NotInvertible,

    #[error("unknown catalog key: {0}")]
    UnknownKey(String),
}

pub type Result<T> = std::result::Result<T, Error>;
