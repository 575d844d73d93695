use std::path::PathBuf;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CONFIG: i32 = 2;
    pub const REFUSED: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] mindist_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Config(String),
    #[error("estimate violates the {0} bound")]
    BoundViolation(String),
    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        use mindist_core::Error as E;
        match self {
            Error::Core(E::OverBudget { .. }) => exit::REFUSED,
            Error::Core(E::Internal(_)) | Error::BoundViolation(_) | Error::Internal(_) => exit::INTERNAL,
            Error::Core(_) | Error::Io { .. } | Error::Config(_) => exit::CONFIG,
        }
    }
}
