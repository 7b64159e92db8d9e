use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor or operation received arguments outside its contract.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Evaluation was requested outside the domain of definition (x ≤ 0,
    /// vanished denominators, …).
    #[error("domain error: {0}")]
    Domain(String),

    /// A branch condition such as `a + bt > 0` or `k₄t + k₁ > 0` failed.
    #[error("branch condition violated: {0}")]
    Branch(String),

    /// A polynomial coefficient exceeded the representable degree.
    #[error("polynomial degree overflow: {0}")]
    DegreeOverflow(String),

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature failure: {0}")]
    Quadrature(String),

    /// A least-squares fit had too few or degenerate data.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    /// Time stepping produced a non-finite value or an exactly integrable
    /// local flow left its domain (finite-time blow-up of the gain term).
    #[error("numerical halt at t = {time}: {reason}")]
    Halt { time: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn branch(msg: impl Into<String>) -> Self {
        Error::Branch(msg.into())
    }
}
