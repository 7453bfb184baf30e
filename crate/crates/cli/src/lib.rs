//! Seeded experiments over rank-metric codes, with JSON and CSV reports.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;

pub use args::{Cli, Command, CommonArgs, Format, Mode};
pub use commands::{run, trial_seed, Outcome};
pub use error::CliError;
pub use report::{ExperimentReport, TrialRecord};
