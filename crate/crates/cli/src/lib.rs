//! Command-line front end for `relmono`: JSON file formats, word syntax,
//! commands and verification suites.

pub mod commands;
pub mod error;
pub mod files;
pub mod parse;
pub mod suites;

pub use commands::{run, Cli, Command};
pub use error::CliError;
pub use files::{FramingFile, PAutFile};
