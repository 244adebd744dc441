//! Machine-readable command reports and the emitters shared by every
//! subcommand.
//!
//! All output is deterministic for fixed arguments except the duration,
//! which is therefore kept out of the primary stream in the text formats
//! (it goes to stderr) and carried as a single well-known field in JSON.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// What a command did: echo of the command and parameters, its results,
/// and a pass/fail verdict for verification commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandReport {
    pub command: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub results: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub passed: Option<bool>,
    pub duration_ms: u64,
}

impl CommandReport {
    pub fn new(command: &str) -> Self {
        CommandReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: serde_json::Value::Null,
            passed: None,
            duration_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }
}

/// Supported output encodings; `dot` applies only to graph output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
    Dot,
}

/// A fully rendered command, ready to emit in any supported format.
pub struct CommandOutput {
    pub report: CommandReport,
    pub table: String,
    pub csv: Option<String>,
}

impl CommandOutput {
    /// Print in the chosen format. Timing goes to stderr for the text
    /// formats so the primary stream stays byte-stable.
    pub fn emit(mut self, format: Format, started: std::time::Instant) -> Result<(), String> {
        self.report.duration_ms = started.elapsed().as_millis() as u64;
        match format {
            Format::Table => {
                print!("{}", self.table);
                eprintln!("duration_ms: {}", self.report.duration_ms);
            }
            Format::Csv => {
                let csv = self
                    .csv
                    .ok_or_else(|| format!("{} has no csv form", self.report.command))?;
                print!("{csv}");
                eprintln!("duration_ms: {}", self.report.duration_ms);
            }
            Format::Json => {
                let rendered = serde_json::to_string_pretty(&self.report)
                    .expect("reports always serialize");
                println!("{rendered}");
            }
            Format::Dot => {
                return Err(format!("{} has no dot form", self.report.command));
            }
        }
        Ok(())
    }
}

/// Quote a CSV field, escaping embedded quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
