use thiserror::Error;

/// Errors raised by evaluators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at a pole of the gamma function or of a denominator
    /// Pochhammer symbol.
    #[error("pole: {0}")]
    Pole(String),

    /// A limit formula that does not exist for the requested parameters.
    #[error("divergent: {0}")]
    Divergent(String),

    /// Intermediate value does not fit in an `f64`.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Request exceeds a resource guard (for example the partition size limit).
    #[error("resource limit: {0}")]
    Resource(String),

    /// A quantity that must vanish by symmetry (for example an imaginary
    /// part) exceeded its tolerance.
    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {subdivisions} subdivisions")]
    NonConvergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
