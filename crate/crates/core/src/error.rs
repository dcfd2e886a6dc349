use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different discriminants")]
    ContextMismatch,
    #[error("sign could not be certified within {0} bits")]
    PrecisionExhausted(u32),
    #[error("no sign change on the bracket")]
    NoSignChange,
    #[error("budget of {0} steps exhausted")]
    BudgetExhausted(usize),
    #[error("discriminant is not positive")]
    NonPositiveDiscriminant,
    #[error("invalid digit {0}")]
    InvalidDigit(i32),
    #[error("element does not have reduced norm 1")]
    NotUnimodular,
    #[error("element is not hyperbolic")]
    NotHyperbolic,
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error("geodesic is not reduced")]
    NotReduced,
    #[error("element does not stabilize the endpoint")]
    NotInStabilizer,
    #[error("element is not in the order")]
    NotInOrder,
    #[error("expansion has no detected period")]
    NotPeriodic,
    #[error("index {0} is outside the computed range")]
    IndexOutOfRange(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
