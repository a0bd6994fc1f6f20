//! Check records, verdicts and rendering.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = "valext";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        }
    }

    /// 0 pass, 1 fail, 2 unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unknown => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub summary: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, status: Status, summary: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status,
            summary: summary.into(),
            witnesses: Vec::new(),
            detail: Value::Null,
            millis: None,
        }
    }

    pub fn with_witnesses(mut self, w: Vec<String>) -> Self {
        self.witnesses = w;
        self
    }

    pub fn with_detail(mut self, detail: impl Serialize) -> Self {
        self.detail = serde_json::to_value(detail).unwrap_or(Value::Null);
        self
    }

    /// A check that could not run: errors are unknown, never pass.
    pub fn errored(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        CheckRecord::new(name, Status::Unknown, format!("error: {err}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub kind: &'static str,
    pub target: String,
    pub seed: u64,
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    pub verdict: Status,
}

pub fn verdict(checks: &[CheckRecord]) -> Status {
    if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if checks.iter().any(|c| c.status == Status::Unknown) {
        Status::Unknown
    } else {
        Status::Pass
    }
}

impl Report {
    pub fn new(
        kind: &'static str,
        target: &str,
        seed: u64,
        config: Value,
        checks: Vec<CheckRecord>,
    ) -> Self {
        let verdict = verdict(&checks);
        Report {
            tool: TOOL,
            version: VERSION,
            kind,
            target: target.to_string(),
            seed,
            config,
            checks,
            verdict,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} {} {} {} (seed {})",
            self.tool, self.version, self.kind, self.target, self.seed
        );
        for c in &self.checks {
            let _ = write!(s, "{:<7} {}: {}", c.status.as_str(), c.name, c.summary);
            if let Some(ms) = c.millis {
                let _ = write!(s, " [{ms} ms]");
            }
            s.push('\n');
            for w in &c.witnesses {
                let _ = writeln!(s, "        witness: {w}");
            }
        }
        let _ = writeln!(s, "verdict: {}", self.verdict.as_str());
        s
    }
}
