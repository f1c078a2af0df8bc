//! Command-line driver: argument parsing, report rendering and the prime
//! classification cache. `main.rs` only maps results to exit codes.

pub mod cache;
pub mod commands;
pub mod report;

pub use commands::{run, Cli};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] twistlab_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1: a hypothesis or precondition fails; 2: the input does not parse;
    /// 3: an internal invariant broke.
    pub fn exit_code(&self) -> i32 {
        use twistlab_core::Error;
        match self {
            CliError::Core(Error::Parse { .. }) => 2,
            CliError::Core(Error::Invariant(_)) | CliError::Json(_) => 3,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}
