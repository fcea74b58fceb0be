use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent user data.
    #[error("input error: {0}")]
    Input(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("coefficients from different fields ({0} and {1})")]
    MixedFields(String, String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A precondition of an operation does not hold (e.g. the input is not a GS basis).
    #[error("contract violated: {0}")]
    Contract(String),

    /// An extension condition or cocycle identity fails for concrete data.
    #[error("condition violated at {composition}: value {value}")]
    Condition { composition: String, value: String },
}
