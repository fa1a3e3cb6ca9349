use thiserror::Error;

/// Error taxonomy for the workbench.
///
/// The three classes are deliberately distinct: malformed arguments are not
/// the same thing as structurally valid arguments that fall outside a
/// theorem's hypothesis, and neither is a search that was refused because it
/// would blow a configured budget.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: dimension mismatches, out-of-range coordinates,
    /// duplicate vertices, unparseable files, arithmetic overflow.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Structurally valid input outside the hypothesis of the formula being
    /// evaluated (e.g. a bound that requires 1 <= log2 m < n). Bounds refuse
    /// to extrapolate silently.
    #[error("out of hypothesis: {0}")]
    OutOfHypothesis(String),

    /// The requested computation exceeds a configured budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Error::OutOfHypothesis(msg.into())
    }

    pub fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}
