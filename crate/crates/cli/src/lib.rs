//! File formats and subcommands of the `reinhardt` tool.

pub mod app;
pub mod format;

pub use app::{run, Cli, CliError, Outcome, EXIT_DATA, EXIT_INTERNAL, EXIT_USAGE};
pub use format::{parse_domain_file, parse_map_file, serialize_domain, serialize_map, FormatError};
