//! Reproducible experiment driver behind the command-line tool.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

pub use config::{ConfigOverrides, ConfigSources, ExperimentConfig, OutputFormat};
pub use output::Table;
