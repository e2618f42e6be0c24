use thiserror::Error;

/// Errors raised by the algebra engine and the verification drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator is identically zero: {0}")]
    IdenticallyZeroDenominator(String),
    #[error("pole: a denominator vanishes at the evaluation point")]
    Pole,
    #[error("denominator has no invertible q^0 coefficient")]
    NonInvertibleAtQZero,
    #[error("argument has negative q-valuation")]
    NegativeQDegree,
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("sampler exhausted its redraw budget of {0}")]
    Exhausted(usize),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
