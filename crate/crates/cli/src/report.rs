//! Verification reports.

use serde_json::{json, Value};

use crate::format::{g17, num};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub status: Status,
    /// `None` for exact comparisons.
    pub max_error: Option<f64>,
    pub detail: String,
}

impl Case {
    /// An exact check.
    pub fn exact(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Case { name: name.into(), status: status(ok), max_error: None, detail: detail.into() }
    }

    /// A float check passing when `max_error <= tol`.
    pub fn within(name: &str, max_error: f64, tol: f64, detail: impl Into<String>) -> Self {
        let ok = max_error <= tol;
        let detail = format!("{} (tolerance {tol:e})", detail.into());
        Case { name: name.into(), status: status(ok), max_error: Some(max_error), detail }
    }

    /// A qualitative float check.
    pub fn check(name: &str, ok: bool, max_error: f64, detail: impl Into<String>) -> Self {
        Case { name: name.into(), status: status(ok), max_error: Some(max_error), detail: detail.into() }
    }

    pub fn failed(name: &str, detail: impl Into<String>) -> Self {
        Case { name: name.into(), status: Status::Fail, max_error: None, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub mode: String,
    pub seed: u64,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(Case::passed)
    }

    pub fn to_json(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "status": if c.passed() { "pass" } else { "fail" },
                    "max_error": match c.max_error {
                        Some(e) => num(e),
                        None => Value::String("exact".into()),
                    },
                    "detail": c.detail,
                })
            })
            .collect();
        json!({ "suite": self.suite, "mode": self.mode, "seed": self.seed, "cases": cases })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (mode {}, seed {})\n", self.suite, self.mode, self.seed);
        for c in &self.cases {
            let err = match c.max_error {
                Some(e) => g17(e),
                None => "exact".into(),
            };
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {:<40} max_error={err:<24} {}\n", c.name, c.detail));
        }
        let failed = self.cases.iter().filter(|c| !c.passed()).count();
        out.push_str(&format!("{} cases, {} failed\n", self.cases.len(), failed));
        out
    }
}
