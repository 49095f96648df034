//! File formats, report emission, the verification suite, and the command-line
//! front end for `digraph-ed-core`.

pub mod cli;
pub mod format;
pub mod graph_file;
pub mod suite;

pub use cli::{run, Cli, CliError};
