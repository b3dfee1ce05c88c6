use thiserror::Error;

use crate::result::GuessResult;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed fields: expected an element of {expected}, found one of {found}")]
    MixedFields { expected: String, found: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },
    #[error("a degree cap is required for an ordering that is not degree-compatible")]
    NeedsDegreeCap,
    #[error("the ordering must be degree-compatible")]
    NotDegreeCompatible,
    #[error("index {0} is outside the table")]
    MissingIndex(String),
    #[error("inconsistent relation system at index {index}")]
    Inconsistent { index: String },
    #[error("singular Hankel matrix")]
    Singular,
    #[error("combination of relations vanished")]
    ZeroCombination,
    #[error("candidate set exhausted before reaching the staircase bound; run sFGLM")]
    RunSfglm(Box<GuessResult>),
    #[error("staircase exceeded the safeguard of {limit} monomials")]
    SafeguardExceeded { limit: usize },
    #[error("family {family} failed self-verification after {retries} seeds")]
    FamilyExhausted { family: String, retries: u32 },
    #[error("unknown builtin table `{0}`")]
    UnknownBuiltin(String),
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
}
