use thiserror::Error;

use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monomials live in different rings: expected {expected} variables, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("operation requires {expected} variables, the ideal has {found}")]
    WrongVariableCount { expected: usize, found: usize },

    #[error("the zero ideal is not a valid input here")]
    ZeroIdeal,

    #[error("the ideal is not generated in a single degree")]
    NotEquigenerated,

    #[error("exponent overflow")]
    Overflow,

    #[error("power exponent must be at least 1, got {0}")]
    InvalidPower(u32),

    #[error("vertex {0} is not in the graph")]
    InvalidVertex(usize),

    #[error("not a permutation of the {len} generators")]
    InvalidPermutation { len: usize },

    #[error("ideal is not linearly presented: G_I({first}, {second}) is disconnected")]
    NotLinearlyPresented { first: Monomial, second: Monomial },

    #[error("tree ordering broke down at z-level {level}: {reason}")]
    TreeOrderInconsistent { level: u32, reason: String },

    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u32),

    #[error("too many vertices for a simplicial complex: {0} (at most 64)")]
    TooManyVertices(usize),

    #[error("face set is not closed under taking subsets")]
    NotDownwardClosed,

    #[error("integer overflow during exact elimination")]
    EliminationOverflow,

    #[error(
        "exhaustive sweeps stop at degree {max}, got {degree}; sample instead or lift the limit"
    )]
    SweepTooLarge { degree: u32, max: u32 },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("parse error in {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
