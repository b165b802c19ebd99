use thiserror::Error;

/// Failures, each mapped to a process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed command line, exit 1.
    #[error("usage: {0}")]
    Usage(String),
    /// Unreadable or invalid scenario, exit 2.
    #[error("{0}")]
    Input(String),
    /// Rejected by the engine, exit 2.
    #[error(transparent)]
    Engine(#[from] thermineq_core::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERDICT: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) | CliError::Engine(_) | CliError::Output(_) => EXIT_INPUT,
        }
    }
}
