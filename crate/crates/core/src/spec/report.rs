//! Reports: a versioned machine form and a human-readable summary.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::linalg::FieldSpec;

pub const SCHEMA: &str = "dualis-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub index: usize,
    pub check: String,
    pub objects: Vec<String>,
    pub passed: bool,
    pub verdict: String,
    #[serde(flatten)]
    pub details: Map<String, Value>,
    pub certificates: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// A spec document reproducing this result on its own.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<Value>,
    /// Wall time; shown in the text summary only, so machine reports stay
    /// byte-identical between runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub source: String,
    pub field: String,
    pub seed: u64,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(source: &str, field: FieldSpec, seed: u64, checks: Vec<CheckResult>) -> Self {
        let failed = checks.iter().filter(|c| !c.passed).count();
        Report {
            schema: SCHEMA.to_string(),
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            source: source.to_string(),
            field: field.to_string(),
            seed,
            passed: failed == 0,
            total: checks.len(),
            failed,
            checks,
        }
    }

    /// Pretty JSON with sorted object keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}  {}  field {}  seed {}", self.tool, self.version, self.source, self.field, self.seed);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(
                out,
                "[{mark}] #{} {}({}) -> {}  ({:.1} ms)",
                c.index,
                c.check,
                c.objects.join(", "),
                c.verdict,
                c.elapsed.as_secs_f64() * 1000.0
            );
            if let Some(e) = &c.error {
                let _ = write!(out, "\n       error: {e}");
            }
            out.push('\n');
        }
        let noun = if self.total == 1 { "check" } else { "checks" };
        let _ = writeln!(out, "{} {noun}, {} passed, {} failed", self.total, self.total - self.failed, self.failed);
        out
    }
}
