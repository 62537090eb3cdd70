//! Deterministic run reports, in a human layout and a versioned
//! machine-readable JSON layout. The machine layout deliberately carries
//! no timing data so that identical inputs produce identical bytes.

use serde::Serialize;
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
        }
    }

    pub fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Skip,
            detail: detail.into(),
        }
    }

    pub fn expect_eq<T: PartialEq + std::fmt::Display>(
        name: impl Into<String>,
        got: T,
        expected: Option<T>,
    ) -> Self {
        let name = name.into();
        match expected {
            None => CheckResult::pass(name, format!("{got}")),
            Some(e) if e == got => CheckResult::pass(name, format!("{got} (as expected)")),
            Some(e) => CheckResult::fail(name, format!("got {got}, expected {e}")),
        }
    }
}

#[derive(Clone, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl ScenarioReport {
    pub fn new(name: impl Into<String>) -> Self {
        ScenarioReport {
            name: name.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }
}

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    /// Scenario file name or suite name.
    pub target: String,
    pub scenarios: Vec<ScenarioReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Report {
    pub fn new(target: impl Into<String>, scenarios: Vec<ScenarioReport>) -> Self {
        let mut passed = 0;
        let mut failed = 0;
        let mut skipped = 0;
        for s in &scenarios {
            for c in &s.checks {
                match c.status {
                    Status::Pass => passed += 1,
                    Status::Fail => failed += 1,
                    Status::Skip => skipped += 1,
                }
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "nonab",
            tool_version: env!("CARGO_PKG_VERSION"),
            target: target.into(),
            scenarios,
            passed,
            failed,
            skipped,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {} :: {}",
            self.tool, self.tool_version, self.target
        );
        for sc in &self.scenarios {
            let _ = writeln!(out, "  {}", sc.name);
            for c in &sc.checks {
                let tag = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skip => "skip",
                };
                let _ = writeln!(out, "    [{tag}] {}: {}", c.name, c.detail);
            }
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.passed, self.failed, self.skipped
        );
        out
    }
}
