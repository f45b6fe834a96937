use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// An intermediate quantity overflowed.
    #[error("range error: {0}")]
    Range(String),
    /// The contour boundary term does not vanish at a branch point because
    /// the corresponding exponent is not positive.
    #[error("divergent endpoint at t = {endpoint}: exponent {exponent} <= 0")]
    DivergentEndpoint { endpoint: f64, exponent: f64 },
    /// A function sample taken by a verifier was not finite.
    #[error("non-finite sample at {at}")]
    NonFinite { at: f64 },
    /// An iterative method failed to reach its tolerance.
    #[error("no convergence after {iterations} iterations: {what}")]
    NoConvergence { what: String, iterations: usize },
    /// Two sampled functions live on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
