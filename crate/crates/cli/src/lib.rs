//! Library half of the `combinf` binary: argument definitions, file formats
//! and subcommand implementations.

pub mod commands;
pub mod error;
pub mod manifest;
pub mod matrix_io;
pub mod svg;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
