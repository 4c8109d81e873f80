//! Verification reports: named checks with a verdict, plus the dimension table.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, details: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            details: details.into(),
        }
    }

    pub fn skipped(name: &str, why: impl Into<String>) -> Self {
        Check { name: name.to_string(), status: Status::Skipped, details: why.into() }
    }
}

/// Echo of the run configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub command: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub field: String,
    pub q12_exp: i64,
    pub mode: String,
    pub n_max: usize,
    pub convention: String,
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub checks: Vec<Check>,
    pub ext_dims: Vec<usize>,
    pub timing_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(config: ConfigEcho) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            config,
            checks: Vec::new(),
            ext_dims: Vec::new(),
            timing_ms: 0,
            warnings: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "nichols-ext {}: N={} field={} q12_exp={} mode={} n_max={} convention={}",
            c.command, c.n, c.field, c.q12_exp, c.mode, c.n_max, c.convention
        );
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if !self.ext_dims.is_empty() {
            let dims: Vec<String> = self.ext_dims.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "ext_dims: [{}]", dims.join(", "));
        }
        for check in &self.checks {
            let _ = writeln!(out, "{:<7} {}: {}", check.status.label().to_uppercase(), check.name, check.details);
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let _ = writeln!(
            out,
            "{} checks, {} failed, {} ms",
            self.checks.len(),
            failed,
            self.timing_ms
        );
        out
    }
}
