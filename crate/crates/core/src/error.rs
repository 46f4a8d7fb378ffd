use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("invalid modulus {0}: expected an odd prime below 2^63")]
    InvalidModulus(u64),
    #[error("curve is singular (discriminant vanishes)")]
    SingularCurve,
    #[error("coefficient has a pole at the specialization point")]
    PoleAtPoint,
    #[error("specialization has bad reduction (discriminant vanishes)")]
    BadReduction,
    #[error("characteristic {0} is not supported (need p > 3)")]
    UnsupportedCharacteristic(u64),
    #[error("need at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid level ell = {ell}: {reason}")]
    InvalidLevel { ell: u64, reason: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no (f, chi) witness found for a proper subgroup")]
    NoWitnessFound,
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("curve is isotrivial: {0}")]
    Isotrivial(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
