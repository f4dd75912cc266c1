//! Command-line front end: the `.eqc` format, renderers, the result cache
//! and the subcommands.

pub mod cache;
pub mod checks;
pub mod commands;
pub mod dsl;
pub mod render;

pub use commands::{execute, Cli, Outcome};
