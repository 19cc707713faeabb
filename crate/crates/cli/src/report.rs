use std::collections::BTreeMap;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// The check could not be evaluated because of a numerical failure.
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub layer: String,
    pub status: Status,
    pub max_residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridInfo {
    pub min: f64,
    pub max: f64,
    pub n: usize,
    pub margin: f64,
    pub tolerance_scale: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: Tool,
    pub config: BTreeMap<String, String>,
    pub grid: GridInfo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub verdict: Status,
    pub checks: Vec<CheckRecord>,
    pub provenance: Provenance,
}

impl VerificationReport {
    pub fn has_numerical_failure(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Error)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skipped))
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let num = |v: Option<f64>| v.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{:<8} {:<34} residual {:>10}  tol {:>10}  {}\n",
                c.status.name(),
                c.check_id,
                num(c.max_residual),
                num(c.tolerance),
                c.notes
            ));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict.name()));
        out
    }
}
