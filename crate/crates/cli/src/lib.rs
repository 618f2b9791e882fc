//! Building blocks behind the `disentangle` command-line tool.

pub mod bench;
pub mod format;
pub mod grid;
pub mod verify;

use thiserror::Error;

/// Failure of a command, mapped onto the process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] disentangle::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} of {1} checks failed")]
    ChecksFailed(usize, usize),
}

impl CliError {
    /// 1 for failed checks, 2 for bad input, domain errors and I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ChecksFailed(..) => 1,
            _ => 2,
        }
    }
}
