//! Command-line surface of the GWIG toolkit: particle profiles as CSV and
//! SVG, the verification report, the wave refinement demo and the metric
//! representation table.

pub mod commands;
pub mod config;
pub mod output;
pub mod svg;

use gwig_core::GwigError;
use thiserror::Error;

pub use config::RunConfig;

/// Every failure a command can end with, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("cannot write {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Core(#[from] GwigError),
}

impl CliError {
    /// 0 is success; 1 a failed check or numerical failure; 2 bad input or
    /// an unusable output location.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Core(GwigError::Singular(_) | GwigError::Quadrature(_)) => 1,
            _ => 2,
        }
    }
}
