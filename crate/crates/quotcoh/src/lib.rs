//! File formats, table reproduction, randomized checks and the command line
//! front end built on `quotcoh-core`.

pub mod cli;
pub mod error;
pub mod json;
pub mod random;
pub mod selftest;
pub mod tables;
pub mod text;

pub use error::{CliError, CliResult};
