use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph order {n} exceeds the limit of {limit} for {what}")]
    TooLarge {
        n: usize,
        limit: usize,
        what: &'static str,
    },

    #[error("alpha {0} outside [0, 1)")]
    AlphaDomain(f64),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("power iteration did not converge after {iterations} steps (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("eigensolver failed to converge on eigenvalue {index}")]
    EigenSolver { index: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
