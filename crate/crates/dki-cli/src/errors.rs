//! CLI error type and its process exit-code mapping.

use std::fmt;

/// Anything that can abort a command, tagged with the exit code contract:
/// 2 configuration, 3 invalid parameter, 4 dimension too large, 5 index out
/// of range, 6 I/O or malformed data file, 7 validation failure.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Validation(String),
    Core(dki_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Validation(_) => 7,
            CliError::Core(e) => match e {
                dki_core::Error::InvalidParameter(_) | dki_core::Error::InvalidModel(_) => 3,
                dki_core::Error::DimensionTooLarge(_) => 4,
                dki_core::Error::IndexOutOfRange(_) => 5,
                dki_core::Error::Io(_) | dki_core::Error::MalformedFile(_) => 6,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration: {msg}"),
            CliError::Validation(msg) => write!(f, "validation: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<dki_core::Error> for CliError {
    fn from(e: dki_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(dki_core::Error::Io(e))
    }
}
