use std::fmt;

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Bad input: a precondition, an unknown name, an unreadable file.
pub const EXIT_PRECONDITION: i32 = 2;
/// The computation ran but did not succeed (fit failure, non-convergence).
pub const EXIT_NUMERIC: i32 = 3;
/// Unknown or missing subcommand.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub enum CliError {
    Core(pade_lab::Error),
    Input(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numeric_failure() => EXIT_NUMERIC,
            _ => EXIT_PRECONDITION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<pade_lab::Error> for CliError {
    fn from(e: pade_lab::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
