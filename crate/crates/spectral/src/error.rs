use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("component mismatch: {0}")]
    ComponentMismatch(String),
    #[error("lambda-inverse of nonzero mean")]
    LambdaInverseMean,
    #[error("negative time: {0}")]
    NegativeTime(f64),
    #[error("snapshot i/o: {0}")]
    SnapshotIo(#[from] std::io::Error),
    #[error("snapshot format: {0}")]
    SnapshotFormat(String),
}
