//! The `sbs` command-line pipeline: config validation, the `stats` and
//! `analyze` commands and their file outputs.

pub mod commands;
pub mod config;
mod output;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::{cmd_analyze, cmd_stats, AnalyzeSummary, StatsSummary, ANALYZE_OUTPUTS, STATS_OUTPUTS};
pub use config::{parse_config, validate_config, Overrides, RunConfig};

pub const TOOL_NAME: &str = "sbs";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors carry the pipeline stage that failed.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("[config] {}", .0.join("; "))]
    Config(Vec<String>),

    #[error("[{stage}] {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: sbs_core::Error,
    },

    #[error("[analyze] {0}")]
    Focal(String),

    #[error("[input] cannot read {}: {source}", path.display())]
    Input {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("[output] cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T, CliError>;
}

impl<T> StageExt<T> for sbs_core::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Stage { stage, source })
    }
}
