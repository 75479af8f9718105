use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The symbol vanishes at the origin, so there are no eigenfunctions.
    #[error("empty point spectrum: g(0) = 0")]
    SpectrumEmpty,
    /// Malformed input data (non-finite coefficients, bad JSON, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn domain(msg: impl Into<String>) -> LabError {
    LabError::Domain(msg.into())
}
