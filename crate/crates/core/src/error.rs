use std::path::PathBuf;

/// Errors produced anywhere in the embedding pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: file is empty")]
    EmptyFile { path: PathBuf },

    #[error("dim mismatch at line {line}: expected {expected} components, found {found}")]
    DimMismatchAtLine { line: usize, expected: usize, found: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("non-positive count for token {token:?} at line {line}")]
    NonPositiveCount { line: usize, token: String },

    #[error("duplicate token {token:?} at line {line}")]
    DuplicateToken { line: usize, token: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty after filtering")]
    EmptyAfterFiltering,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("k = {k} exceeds the feasible rank min({rows}, {cols})")]
    InfeasibleRank { k: usize, rows: usize, cols: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("corrupted noise model: {0}")]
    CorruptedModel(String),

    #[error("degenerate embedding: sentence vector has zero norm")]
    DegenerateEmbedding,

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("training diverged at epoch {epoch}: loss = {loss}")]
    Diverged { epoch: usize, loss: f64 },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
