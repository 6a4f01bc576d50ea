use thiserror::Error;

/// Errors produced by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    Input(String),
    /// The operation is not defined for this ring or field.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A square matrix was singular where an inverse was required.
    #[error("matrix is singular (rank {rank} of {dim})")]
    Singular { rank: usize, dim: usize },
    /// A configurable resource guard was exceeded.
    #[error("resource cap `{cap}` exceeded: need {needed}, cap is {limit}")]
    Resource {
        cap: &'static str,
        needed: u128,
        limit: u128,
    },
    /// An internal invariant failed; always a bug signal.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
