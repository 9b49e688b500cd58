use thiserror::Error;

use crate::oracle::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {label}")]
    SelfLoop { line: usize, label: String },

    #[error("self-loop on vertex {0}")]
    Loop(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A construction's hypothesis does not hold for the given input.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A compatible pair (f, h) could not be established within budget.
    #[error("hypothesis not established: {0}")]
    NotEstablished(String),

    #[error("coloring covers {got} of {expected} vertices")]
    PartialColoring { got: usize, expected: usize },

    #[error("instance too large: {vertices} vertices exceeds cap {cap}")]
    TooLarge { vertices: usize, cap: usize },

    #[error("construction produced an improper coloring: {0}")]
    Improper(Violation),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("search budget of {0} nodes exhausted")]
    Budget(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
