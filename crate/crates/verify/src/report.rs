use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::SuiteConfig;

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
    SkippedPole,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped-budget",
            Status::SkippedPole => "skipped-pole",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: String,
    pub suite: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    /// Serialized residual; `"0"` when the check passed.
    pub residual: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    #[serde(rename = "skipped-budget", default, skip_serializing_if = "is_zero")]
    pub skipped_budget: usize,
    #[serde(rename = "skipped-pole", default, skip_serializing_if = "is_zero")]
    pub skipped_pole: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl Summary {
    fn of(cases: &[CaseRecord]) -> Self {
        let mut s = Summary::default();
        for c in cases {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SkippedBudget => s.skipped_budget += 1,
                Status::SkippedPole => s.skipped_pole += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub engine: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<SuiteConfig>,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl Default for Report {
    fn default() -> Self {
        Report::new(None, Vec::new())
    }
}

impl Report {
    pub fn new(config: Option<SuiteConfig>, cases: Vec<CaseRecord>) -> Self {
        let summary = Summary::of(&cases);
        Report { version: SCHEMA_VERSION, engine: env!("CARGO_PKG_VERSION").to_string(), config, cases, summary }
    }

    /// Concatenates the cases; the first config present wins.
    pub fn merge(mut self, other: Report) -> Report {
        self.cases.extend(other.cases);
        self.summary = Summary::of(&self.cases);
        if self.config.is_none() {
            self.config = other.config;
        }
        self
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    pub fn find(&self, id: &str) -> Option<&CaseRecord> {
        self.cases.iter().find(|c| c.id == id)
    }

    /// SHA-256 of the report with every `runtime_ms` zeroed.
    pub fn digest(&self) -> String {
        let mut stripped = self.clone();
        stripped.cases.iter_mut().for_each(|c| c.runtime_ms = 0);
        let bytes = serde_json::to_vec(&stripped).expect("report serializes");
        hex::encode(Sha256::digest(bytes))
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["digest"] = serde_json::Value::String(self.digest());
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&format!("{:<14} {}", c.status.as_str(), c.id));
            if c.status != Status::Pass {
                out.push_str(&format!("  {}", c.residual));
            }
            for (k, v) in &c.notes {
                out.push_str(&format!("  [{k}={v}]"));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "summary: pass={} fail={} skipped-budget={} skipped-pole={}\n",
            s.pass, s.fail, s.skipped_budget, s.skipped_pole
        ));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Writes the report to `path`, or stdout when `path` is `None` or `-`.
pub fn emit_report(report: &Report, path: Option<&Path>, format: Format) -> std::io::Result<()> {
    let body = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::write(p, body),
        _ => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(id: &str, status: Status) -> CaseRecord {
        CaseRecord {
            id: id.into(),
            suite: "t".into(),
            params: BTreeMap::new(),
            status,
            residual: "0".into(),
            notes: BTreeMap::new(),
            runtime_ms: 3,
        }
    }

    #[test]
    fn empty_report_shape() {
        let v: serde_json::Value = serde_json::from_str(&Report::default().to_json()).unwrap();
        assert_eq!(v["cases"], serde_json::json!([]));
        assert_eq!(v["summary"], serde_json::json!({"pass": 0, "fail": 0}));
        assert_eq!(v["version"], SCHEMA_VERSION);
    }

    #[test]
    fn merge_is_associative() {
        let a = Report::new(None, vec![case("a", Status::Pass)]);
        let b = Report::new(None, vec![case("b", Status::Fail)]);
        let c = Report::new(None, vec![case("c", Status::SkippedPole)]);
        let left = a.clone().merge(b.clone()).merge(c.clone());
        let right = a.merge(b.merge(c));
        assert_eq!(left.to_json(), right.to_json());
        assert_eq!(left.summary, Summary { pass: 1, fail: 1, skipped_budget: 0, skipped_pole: 1 });
        assert_eq!(left.exit_code(), 1);
    }

    #[test]
    fn digest_ignores_runtime() {
        let a = Report::new(None, vec![case("a", Status::Pass)]);
        let mut b = a.clone();
        b.cases[0].runtime_ms = 999;
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.to_json(), b.to_json());
    }
}
