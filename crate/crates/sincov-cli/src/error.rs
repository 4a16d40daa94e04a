//! CLI-level failure type and its mapping onto process exit codes.
//!
//! Exit code contract: `0` — the command ran and its outcome is a pass;
//! `1` — the command ran and its outcome is a failure (a law violated, an
//! oracle VIOLATED verdict, no solution found); `2` — the command could not
//! run (usage error, unreadable or malformed input, domain error). Exit 1 is
//! expressed by `Outcome::pass == false`, never through this error type.

use std::fmt;

use sincov_core::instance::Error as CoreError;

/// A failure that prevents a command from producing a report (exit 2).
#[derive(Debug)]
pub struct CliError {
    pub message: String,
}

impl CliError {
    pub fn new(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::new(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(e.to_string())
    }
}
