//! Command-line frontend for `fplift-core`: job specifications, result
//! documents and exit statuses.
//!
//! Exit statuses: 0 verified success, 1 usage error, 2 bound abort,
//! 3 verification or internal failure.

pub mod cli;
pub mod doc;
pub mod error;
pub mod job;

pub use cli::Cli;
pub use doc::Format;
pub use error::CliError;
pub use job::{run, validate, Command, DemoMode, JobSpec, Outcome, Special};
