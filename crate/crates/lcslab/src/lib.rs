//! Command-line driver for `lcslab-core`: relation files, run
//! configuration, JSON reports and the reproduction runs.

pub mod cli;
pub mod commands;
pub mod experiments;
pub mod relfile;
pub mod report;

pub use cli::{run, run_captured, Outcome, RunConfig};
pub use report::{Check, Report, Status};
