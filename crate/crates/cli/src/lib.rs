//! Command-line surface for the ottoband engine library: configuration
//! parsing, output serializers, and the four subcommands (cycle, sweep,
//! fig3, verify).

pub mod commands;
pub mod config;
pub mod output;

pub use commands::CliError;
pub use config::{parse_config, ConfigError, Mode, OutputFormat, RunConfig};
