use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const CONFIG_ERROR: i32 = 2;
    pub const NUMERICAL_FAILURE: i32 = 3;
}

/// A configuration problem, located by line and field where possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl ConfigError {
    pub fn at(line: usize, field: impl Into<Option<String>>, message: impl Into<String>) -> Self {
        ConfigError { line: Some(line), field: field.into(), message: message.into() }
    }

    pub fn field(field: &str, message: impl Into<String>) -> Self {
        ConfigError { line: None, field: Some(field.to_string()), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.field) {
            (Some(l), Some(k)) => write!(f, "line {l}, field `{k}`: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(k)) => write!(f, "field `{k}`: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("numerical failure: {0}")]
    Numerical(sodirac_core::Error),
    #[error("{0}")]
    Model(sodirac_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl From<sodirac_core::Error> for CliError {
    fn from(e: sodirac_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e)
        } else {
            CliError::Model(e)
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => exit::NUMERICAL_FAILURE,
            CliError::Config(_) | CliError::Domain(_) | CliError::Usage(_) | CliError::Model(_) => exit::CONFIG_ERROR,
            CliError::Io(_) => exit::CONFIG_ERROR,
        }
    }
}
