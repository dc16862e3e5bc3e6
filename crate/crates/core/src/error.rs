use thiserror::Error;

use crate::gf::FieldElement;

/// Errors raised by the algebra, descent and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus {which} is reducible or malformed")]
    ReducibleModulus { which: &'static str },
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the supplied elements are not a basis of k over k'")]
    NotABasis,
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("variable {0} has no image in the substitution")]
    UnassignedVariable(String),
    #[error("degree {degree} exceeds the span degree {cap}")]
    DegreeTooHigh { degree: u32, cap: u32 },
    #[error("Buchberger step budget of {0} pair reductions exceeded")]
    StepBudgetExceeded(usize),
    #[error("coordinate {index} does not lie in the required field")]
    CoordinateNotInField { index: usize },
    #[error("variable {var} has degree {degree}, bound is {bound}")]
    DegreeExceedsBound { var: usize, degree: usize, bound: usize },
    #[error("f_W does not divide x^n - 1 over k'")]
    NotADivisor,
    #[error("polynomials are not coprime (gcd has degree {})", gcd.len().saturating_sub(1))]
    NotCoprime { gcd: Vec<FieldElement> },
    #[error("stage {stage}: witness component is not coprime to f_W")]
    GcdConditionFailed { stage: usize },
    #[error("stage {stage}: witness search budget exhausted without a definitive answer")]
    SearchBudgetExceeded { stage: usize },
    #[error("system is not reducible for the chosen subspace")]
    NotReducible,
    #[error("q = {q} exceeds the solver ceiling {ceiling}")]
    FieldTooLarge { q: u32, ceiling: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
