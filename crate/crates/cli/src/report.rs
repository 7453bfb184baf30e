//! Experiment reports and their JSON/CSV renderings.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::error::CliError;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TrialRecord {
    pub index: u64,
    pub seed: u64,
    pub passed: bool,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ExperimentReport {
    pub tool_version: String,
    pub command: String,
    pub config: Value,
    pub trials: Vec<TrialRecord>,
    pub pass_count: u64,
    pub trial_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub floor: Option<f64>,
    pub findings: Vec<Value>,
    pub wall_clock_ms: u64,
}

impl ExperimentReport {
    pub fn new(command: &str, config: Value, trials: Vec<TrialRecord>) -> Self {
        let pass_count = trials.iter().filter(|t| t.passed).count() as u64;
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            trial_count: trials.len() as u64,
            pass_count,
            trials,
            floor: None,
            findings: Vec::new(),
            wall_clock_ms: 0,
        }
    }

    pub fn pass_rate(&self) -> f64 {
        if self.trial_count == 0 {
            return 1.0;
        }
        self.pass_count as f64 / self.trial_count as f64
    }

    /// The report with the wall-clock field zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_clock_ms: 0,
            ..self.clone()
        }
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> Result<(), CliError> {
        match format {
            Format::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["index", "seed", "passed", "details"])?;
                for t in &self.trials {
                    w.write_record([
                        t.index.to_string(),
                        t.seed.to_string(),
                        t.passed.to_string(),
                        t.details.to_string(),
                    ])?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}
