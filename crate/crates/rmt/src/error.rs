#[derive(Debug, thiserror::Error)]
pub enum RmtError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("matrix letter is {actual}x{actual}, expected {expected}x{expected}")]
    Dimension { expected: usize, actual: usize },
    #[error("linear algebra failure: {0}")]
    Linalg(String),
    #[error(transparent)]
    Core(#[from] gjs3_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = RmtError> = std::result::Result<T, E>;
