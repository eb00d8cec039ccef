use thiserror::Error;

/// Failures surfaced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mode: {0}")]
    InvalidMode(String),
    #[error("support mismatch: {0}")]
    SupportMismatch(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state lies outside the validity ball: {0}")]
    OutsideBall(String),
    #[error("{0}")]
    Convergence(String),
    #[error("real structure violated: defect {0:e}")]
    RealStructure(f64),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
