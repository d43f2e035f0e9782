//! Command-line front end, result tables and acceptance checks for the
//! conditional Faraday gate simulator in [`faraday_core`].

pub mod acceptance;
pub mod cli;
pub mod parallel;
pub mod table;

/// Everything that can stop a command.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("computation failed: {0}")]
    Core(#[from] faraday_core::Error),
    #[error("{0} acceptance criteria failed")]
    AcceptanceFailed(usize),
}

impl CliError {
    /// 0 ok, 1 usage, 2 I/O, 3 acceptance failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => i32::from(e.use_stderr()),
            CliError::Usage(_) | CliError::Core(_) => 1,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 2,
            CliError::AcceptanceFailed(_) => 3,
        }
    }
}
