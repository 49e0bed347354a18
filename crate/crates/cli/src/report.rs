//! The versioned JSON report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorInfo {
    pub code: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub path: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SliceEntry {
    pub k: usize,
    /// `exact-equal`, `float-close` or `mismatch`.
    pub status: String,
    pub residual_terms: usize,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slices: Vec<SliceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        CheckReport { name: name.into(), status, slices: Vec::new(), error: None, data: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.data.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub version: String,
    pub command: String,
    pub mode: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bae_residuals: Vec<String>,
    #[serde(default)]
    pub checks: Vec<CheckReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn new(command: &str, mode: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            version: format!("gaudin {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            mode: mode.to_string(),
            status: Status::Pass,
            bae_residuals: Vec::new(),
            checks: Vec::new(),
            error: None,
        }
    }

    /// Overall status from the checks: any error wins, then any failure.
    pub fn settle(&mut self) {
        self.status = if self.error.is_some() || self.checks.iter().any(|c| c.status == Status::Error) {
            Status::Error
        } else if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Skipped => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Plain-text summary for stderr.
    pub fn summary(&self) -> String {
        let word = |s: Status| match s {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Error => "ERROR",
        };
        let mut out = format!("{} ({} mode): {}\n", self.command, self.mode, word(self.status));
        if let Some(e) = &self.error {
            out.push_str(&format!("  error [{}] {}\n", e.code, e.message));
        }
        for c in &self.checks {
            out.push_str(&format!("  {:<28} {}", c.name, word(c.status)));
            if let Some(e) = &c.error {
                out.push_str(&format!(" [{}] {}", e.code, e.message));
            }
            let bad: Vec<String> = c.slices.iter().filter(|s| s.status == "mismatch").map(|s| s.k.to_string()).collect();
            if !bad.is_empty() {
                out.push_str(&format!(" (failing slices k = {})", bad.join(", ")));
            }
            out.push('\n');
        }
        out
    }
}
