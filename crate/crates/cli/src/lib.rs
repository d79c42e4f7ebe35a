//! Command-line front end for `circle-genus-core`: text edge lists, JSON and
//! CSV output, the committed catalog snapshot, the census cache, and the
//! parallel census driver.

pub mod cache;
pub mod commands;
pub mod driver;
pub mod edgelist;
pub mod json;
pub mod snapshot;

pub use commands::{run, Cli, CliError, Outcome};
