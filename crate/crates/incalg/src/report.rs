//! Deterministic reports in text or JSON.

use serde::Serialize;
use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// A report: fixed header, free-form text lines and a JSON result object
/// carrying the same content.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub ring: Option<String>,
    pub poset: Option<String>,
    pub seed: u64,
    pub verdict: Option<bool>,
    lines: Vec<String>,
    result: Map<String, Value>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    version: &'a str,
    command: &'a str,
    ring: &'a Option<String>,
    poset_fingerprint: &'a Option<String>,
    seed: u64,
    verdict: Option<bool>,
    result: &'a Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report { command: command.to_string(), ring: None, poset: None, seed, verdict: None, lines: Vec::new(), result: Map::new() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Appends a multi-line block, one report line per text line.
    pub fn block(&mut self, text: &str) {
        self.lines.extend(text.lines().map(str::to_string));
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_string(), value.into());
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut out = format!(
                    "# incalg {VERSION}\n# command: {}\n# ring: {}\n# poset: {}\n# seed: {}\n",
                    self.command,
                    self.ring.as_deref().unwrap_or("-"),
                    self.poset.as_deref().unwrap_or("-"),
                    self.seed
                );
                for l in &self.lines {
                    out.push_str(l);
                    out.push('\n');
                }
                out
            }
            OutputFormat::Json => {
                let r = JsonReport {
                    version: VERSION,
                    command: &self.command,
                    ring: &self.ring,
                    poset_fingerprint: &self.poset,
                    seed: self.seed,
                    verdict: self.verdict,
                    result: &self.result,
                };
                let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
