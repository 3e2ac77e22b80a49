//! The report document and its JSON, CSV and text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::RunConfig;

/// Bumped whenever a field is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One verified claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    /// Family of the check, e.g. `dimensions` or `drinfeld`.
    pub group: String,
    pub name: String,
    pub parameters: Map<String, Value>,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    /// Wall time in milliseconds; excluded from determinism comparisons.
    pub elapsed_ms: u64,
    /// Where the expected value comes from: a formula name or an oracle.
    pub provenance: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The integer under `key` in `parameters`, if any.
    pub fn param(&self, key: &str) -> Option<u64> {
        self.parameters.get(key).and_then(Value::as_u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub schema: u32,
    pub command: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(command: &str, config: &RunConfig, checks: Vec<Check>, elapsed_ms: u64) -> Self {
        let pass = checks.iter().filter(|c| c.passed()).count();
        let fail = checks.len() - pass;
        ReportDocument {
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config: config.clone(),
            checks,
            summary: Summary { pass, fail, elapsed_ms },
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    /// A copy with every timing field zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        let mut doc = self.clone();
        doc.summary.elapsed_ms = 0;
        for c in &mut doc.checks {
            c.elapsed_ms = 0;
        }
        doc
    }

    /// `(name, parameters, status)` per check.
    pub fn verdicts(&self) -> Vec<(String, String, Status)> {
        self.checks
            .iter()
            .map(|c| (c.name.clone(), Value::Object(c.parameters.clone()).to_string(), c.status))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let params: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            let _ = writeln!(
                out,
                "[{}] {} {} ({}): expected {}, computed {}",
                match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                },
                c.group,
                c.name,
                params.join(" "),
                plain(&c.expected),
                plain(&c.computed),
            );
        }
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed in {} ms",
            self.command, self.summary.pass, self.summary.fail, self.summary.elapsed_ms
        );
        out
    }

    /// CSV with the columns given by `columns`; `None` uses the generic layout.
    pub fn to_csv(&self, columns: Option<&[&str]>) -> String {
        let mut out = String::new();
        match columns {
            Some(cols) => {
                out.push_str(&cols.join(","));
                out.push('\n');
                for c in &self.checks {
                    let row: Vec<String> = cols.iter().map(|k| csv_field(&cell(c, k))).collect();
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
            }
            None => {
                out.push_str("group,name,parameters,expected,computed,status,provenance\n");
                for c in &self.checks {
                    let params: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
                    let row = [
                        c.group.clone(),
                        c.name.clone(),
                        params.join(" "),
                        plain(&c.expected),
                        plain(&c.computed),
                        if c.passed() { "pass".into() } else { "fail".into() },
                        c.provenance.clone(),
                    ];
                    let row: Vec<String> = row.iter().map(|s| csv_field(s)).collect();
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn cell(c: &Check, key: &str) -> String {
    match key {
        "match" => c.passed().to_string(),
        "status" => if c.passed() { "pass" } else { "fail" }.to_string(),
        "expected" | "dim_formula" => plain(&c.expected),
        "computed" | "dim_engine" => plain(&c.computed),
        "name" => c.name.clone(),
        k => c.parameters.get(k).map(plain).unwrap_or_default(),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
