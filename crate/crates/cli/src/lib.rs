//! Support code for the `pcone` binary: matrix files, exit codes and the
//! verification-suite runner.

pub mod error;
pub mod files;
pub mod suite;

pub use error::CliError;
pub use suite::{run_suite, Format, SuiteConfig, SuiteReport, SUITES};
