//! Configuration-driven runner for the `phib` verification suites.
//!
//! A TOML document selects a norm, sampler settings and a list of suites;
//! [`run`] executes them and returns a [`RunReport`] that renders either as
//! diff-friendly text or as JSON that parses back to an equal report.

mod config;
mod render;
mod run;

use thiserror::Error;

pub use config::{
    parse_config, BoundExpectation, Format, NormConfig, NormKindConfig, OutputSection, PhiConfig, RunConfig,
    SamplerSection, SequenceConfig, SequenceExpectation, SetConfig, SuiteConfig, SuiteKind, TNormConfig,
};
pub use render::{parse_report, render, render_structured, render_text};
pub use run::{run, RunReport, SuiteDetails, SuiteReport};

/// Exit status for a run whose verdict is pass.
pub const EXIT_PASS: i32 = 0;
/// Exit status for a run with at least one failing check.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for configuration, usage and I/O errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed TOML, unknown keys or wrongly typed values; the message
    /// carries the position.
    #[error("invalid config: {0}")]
    Parse(String),

    #[error("invalid config: {key}: {message}")]
    Invalid { key: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid report: {0}")]
    Report(String),

    #[error(transparent)]
    Core(#[from] phib_core::Error),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_ERROR
    }
}

/// Reads, parses and resolves a config file.
pub fn load_config(path: &std::path::Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}
