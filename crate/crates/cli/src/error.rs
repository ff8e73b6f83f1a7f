use std::fmt;
use std::process::ExitCode;

use hyperlegendre::Error;

/// A failed run, carrying the exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Input could not be read or parsed (exit 2).
    Parse(String),
    /// Input parsed but violates a structural invariant (exit 3).
    Invariant(String),
    /// A computation broke down (exit 4).
    Numerical(String),
    /// Writing the report failed.
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Numerical(_) | CliError::Io(_) => 4,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Invariant(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_invariant_violation() {
            CliError::Invariant(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
