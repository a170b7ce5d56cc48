use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("overlap modulus {0} exceeds 1")]
    OverlapOutOfRange(f64),

    #[error("density matrix rejected: {}", .0.join("; "))]
    InvalidDensity(Vec<String>),

    #[error("grid: {0}")]
    Grid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
