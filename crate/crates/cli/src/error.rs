//! Process-level error type mapping every failure to an exit code.

use std::fmt;

/// Anything that aborts a run, split by exit code: invalid configuration
/// exits 2, numerical or I/O failures during an accepted run exit 3.
#[derive(Debug)]
pub enum CliError {
    /// Bad, missing, or inconsistent configuration.
    Invalid(String),
    /// The configuration was accepted but the computation or file output
    /// failed.
    Runtime(String),
}

impl CliError {
    /// Process exit code for this failure.
    pub fn code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) | CliError::Runtime(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<bjj_core::Error> for CliError {
    fn from(e: bjj_core::Error) -> CliError {
        match e {
            bjj_core::Error::NoConvergence { .. } | bjj_core::Error::TailMass(_) => {
                CliError::Runtime(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Runtime(format!("i/o failure: {e}"))
    }
}

/// Convenience alias used by every fallible function in this binary.
pub type CliResult<T> = Result<T, CliError>;
