//! Command line front end for `cremona-core`: map formulas, JSON reports, PPM and CSV artifacts.

pub mod commands;
pub mod json;
pub mod params;
pub mod parse;
pub mod render;

use std::path::{Path, PathBuf};

pub use commands::run;
pub use parse::{parse_map, MapExpression, MapForm, ModelTag, ParseError, ParseErrorKind};

/// Version of the JSON layout, written as the top-level `"schema"` field.
pub const SCHEMA_VERSION: &str = "1";

/// Environment variable overriding the polynomial term budget.
pub const TERM_CAP_ENV: &str = "CREMONA_TERM_CAP";

/// Process exit status.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    /// An artifact could not be read or written.
    Io = 1,
    Usage = 2,
    Truncated = 3,
    VerificationFailed = 4,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] cremona_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Core(cremona_core::Error::InvariantViolation(_)) => ExitStatus::VerificationFailed,
            CliError::Usage(_) | CliError::Parse(_) | CliError::Core(_) => ExitStatus::Usage,
            CliError::Io { .. } => ExitStatus::Io,
        }
    }
}

/// Everything a run produced besides files named by flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Outcome {
    pub fn stdout_text(&self) -> String {
        String::from_utf8_lossy(&self.stdout).into_owned()
    }

    /// The JSON written to stdout.
    pub fn json(&self) -> Option<serde_json::Value> {
        serde_json::from_slice(&self.stdout).ok()
    }
}
