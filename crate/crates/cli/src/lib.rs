//! Figure runner and verification suites for `mesoq`.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod run;
pub mod verify;

pub use config::RunConfig;
pub use error::CliError;
pub use run::{run, RunOptions};
