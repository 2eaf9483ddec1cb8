use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid probability {0}")]
    InvalidProbability(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no {k}-regular graph on {n} vertices: {reason}")]
    RegularInfeasible { n: usize, k: usize, reason: &'static str },

    #[error("rejection budget of {0} restarts exhausted")]
    RejectionBudget(usize),

    #[error("{what}: size {size} exceeds exact-mode limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("search budget of {0} nodes exceeded")]
    SearchBudget(u64),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("Gram matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("sample budget exhausted: placed {achieved} of {requested} points")]
    SampleBudget { achieved: usize, requested: usize },

    #[error("projection failed after {retries} retries (best alpha_max {best_alpha_max})")]
    RetriesExhausted { retries: usize, best_alpha_max: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("{formula}: parameter outside domain ({reason})")]
    Domain {
        formula: &'static str,
        reason: String,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
