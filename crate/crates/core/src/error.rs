use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("bidegree out of range: {0}")]
    Bidegree(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
