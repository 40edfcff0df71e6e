use thiserror::Error;

use crate::scalars::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars from different fields: {0} and {1}")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^20")]
    InvalidPrime(u64),
    #[error("structure constant {numerator}/{denominator} is not an integer")]
    NonIntegralQuotient {
        numerator: String,
        denominator: String,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("substitution argument {index} has a constant term")]
    NonReducedArgument { index: usize },
    #[error("element is not reduced: {0}")]
    NotReduced(String),
    #[error("enumeration too large: {0} items exceed the limit")]
    TooLarge(u128),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("variable {name} is outside arity {arity}")]
    Arity { name: String, arity: usize },
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::ShapeMismatch(msg.into())
    }
}
