//! Command-line front end for `curvatom-core`: spectra, sampled radial wave
//! functions, flat-limit sweeps and verification reports as CSV or JSON.

pub mod commands;
pub mod config;
pub mod emit;
pub mod verify;

use thiserror::Error;

/// Everything that can end a run early, with the process exit status it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] curvatom_core::Error),
    #[error("verification failed in {failed} of {total} suites")]
    Verification { failed: usize, total: usize },
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 3,
        }
    }

    /// Stable reason code printed on the error line.
    pub fn reason(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(e) => e.code(),
            CliError::Verification { .. } => "verification_failed",
            CliError::Io(_) => "io",
        }
    }
}
