use thiserror::Error;

#[derive(Debug, Error)]
pub enum EccError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{}: line {line}: {msg}", path.display())]
    ParseFile {
        path: std::path::PathBuf,
        line: usize,
        msg: String,
    },

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("LP solver failed: {0}")]
    Solver(String),

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = EccError> = std::result::Result<T, E>;
