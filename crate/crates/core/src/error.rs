use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (datum file, character, path).
    #[error("invalid input: {0}")]
    Input(String),
    /// A datum file failed validation at a known line.
    #[error("{file}:{line}: {msg}")]
    Datum {
        file: String,
        line: usize,
        msg: String,
    },
    /// A structural invariant failed at runtime.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// A numerical routine did not converge or exceeded tolerance.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// The path or character degenerates in a way the algorithm cannot continue from.
    #[error("degenerate case: {0}")]
    Degenerate(String),
}

impl Error {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Datum { .. } | Error::Degenerate(_) => 2,
            Error::Invariant(_) => 1,
            Error::Numerical(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
