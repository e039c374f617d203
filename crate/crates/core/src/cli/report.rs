//! The JSON report. Everything but `timing` is a function of the config and the seed.

use std::collections::BTreeMap;

use serde::Serialize;

use super::config::SessionConfig;

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Inconclusive,
    Violations,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Violations => 1,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub status: Status,
    pub checked: usize,
    pub violations: usize,
    pub inconclusive: usize,
    /// One line per finding, for the summary.
    pub notes: Vec<String>,
    pub details: serde_json::Value,
}

impl SuiteResult {
    pub fn new(name: &str) -> Self {
        SuiteResult {
            name: name.into(),
            status: Status::Pass,
            checked: 0,
            violations: 0,
            inconclusive: 0,
            notes: Vec::new(),
            details: serde_json::Value::Null,
        }
    }

    /// Record one expectation.
    pub fn expect(&mut self, ok: bool, what: impl Into<String>) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            self.notes.push(format!("violated: {}", what.into()));
        }
    }

    pub fn undecided(&mut self, what: impl Into<String>) {
        self.inconclusive += 1;
        self.notes.push(format!("inconclusive: {}", what.into()));
    }

    pub fn finish(mut self, details: impl Serialize) -> Self {
        self.status = if self.violations > 0 {
            Status::Violations
        } else if self.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        self.details = serde_json::to_value(details).expect("report details serialize");
        self
    }
}

/// Wall-clock data, kept apart so the rest of the report is reproducible.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub started_unix_ms: u128,
    pub total_ms: u128,
    pub suites_ms: BTreeMap<String, u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub command: String,
    pub seed: u64,
    pub status: Status,
    pub exit_code: i32,
    pub suites: Vec<SuiteResult>,
    pub config: SessionConfig,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str, config: SessionConfig, suites: Vec<SuiteResult>, timing: Timing) -> Self {
        let status = suites.iter().map(|s| s.status).max().unwrap_or(Status::Pass);
        Report {
            tool: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            command: command.into(),
            seed: config.seed,
            status,
            exit_code: status.exit_code(),
            suites,
            config,
            timing,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut out = format!("{} {}: {:?}\n", self.tool, self.command, self.status);
        for s in &self.suites {
            out += &format!(
                "  {:<12} {:<12} checked {:>6}  violations {}  inconclusive {}\n",
                s.name,
                format!("{:?}", s.status).to_lowercase(),
                s.checked,
                s.violations,
                s.inconclusive
            );
            for n in &s.notes {
                out += &format!("    {n}\n");
            }
        }
        out
    }
}

/// A report's JSON with the `timing` field removed.
pub fn without_timing(json: &str) -> Result<String, serde_json::Error> {
    let mut v: serde_json::Value = serde_json::from_str(json)?;
    if let Some(o) = v.as_object_mut() {
        o.remove("timing");
    }
    serde_json::to_string_pretty(&v)
}
