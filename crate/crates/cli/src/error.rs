use std::fmt;
use std::io;

use ggc_oracle::OracleError;

use crate::dsl::{LowerError, ParseError};

/// Failures that stop a command before it can report.
#[derive(Debug)]
pub enum CliError {
    Parse {
        flag: String,
        error: ParseError,
    },
    /// Inputs that parse but are outside the domain of the command.
    Domain(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 5,
        }
    }

    pub(crate) fn lower(flag: &str, e: LowerError) -> Self {
        CliError::Domain(format!("{flag}: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { flag, error } => write!(f, "syntax error in {flag}: {error}"),
            CliError::Domain(msg) => write!(f, "{msg}"),
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ggc_core::Error> for CliError {
    fn from(e: ggc_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::NonFinite { .. } => {
                CliError::Internal(format!("{e}; more time steps may help"))
            }
            OracleError::NoConvergence => CliError::Internal(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// A check or tolerance was not met.
    Fail,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 4,
        }
    }
}
