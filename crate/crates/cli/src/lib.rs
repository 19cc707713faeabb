//! Command-line front end: configuration files, the verification suite,
//! model summaries, figure data and spectrum tables.

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;
pub mod report;
pub mod verify;

pub use config::ModelConfig;
pub use error::{exit, CliError, ConfigError};
pub use report::{CheckRecord, Status, VerificationReport};
