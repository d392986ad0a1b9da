//! Verification reports: one row per named check, each failing row carrying
//! the first counterexample with both sides evaluated.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Checks with at most this many cases keep every evaluation in the report.
pub const TRACE_LIMIT: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub at: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at ({}): lhs = {}, rhs = {}{}",
            self.at.join(", "),
            self.lhs,
            self.rhs,
            if self.holds { "" } else { "  ✗" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    pub cases: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Evaluation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evaluations: Vec<Evaluation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn passed(check: impl Into<String>, cases: u64) -> Self {
        CheckResult {
            check: check.into(),
            pass: true,
            cases,
            counterexample: None,
            evaluations: Vec::new(),
            note: None,
        }
    }

    pub fn failed(check: impl Into<String>, cases: u64, counterexample: Evaluation) -> Self {
        CheckResult {
            check: check.into(),
            pass: false,
            cases,
            counterexample: Some(counterexample),
            evaluations: Vec::new(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Accumulates the cases of one check.
pub struct Check {
    name: String,
    cases: u64,
    trace: bool,
    first_failure: Option<Evaluation>,
    evaluations: Vec<Evaluation>,
}

impl Check {
    pub fn new(name: impl Into<String>, expected_cases: u64) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            trace: expected_cases <= TRACE_LIMIT,
            first_failure: None,
            evaluations: Vec::new(),
        }
    }

    /// Records one case; `describe` is only called when the case must be kept.
    #[inline]
    pub fn case(&mut self, holds: bool, describe: impl FnOnce() -> (Vec<String>, String, String)) {
        self.cases += 1;
        if self.trace || (!holds && self.first_failure.is_none()) {
            let (at, lhs, rhs) = describe();
            let ev = Evaluation { at, lhs, rhs, holds };
            if !holds && self.first_failure.is_none() {
                self.first_failure = Some(ev.clone());
            }
            if self.trace {
                self.evaluations.push(ev);
            }
        }
    }

    pub fn failed(&self) -> bool {
        self.first_failure.is_some()
    }

    pub fn finish(self) -> CheckResult {
        CheckResult {
            check: self.name,
            pass: self.first_failure.is_none(),
            cases: self.cases,
            counterexample: self.first_failure,
            evaluations: self.evaluations,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, row: CheckResult) {
        self.checks.push(row);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, check: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == check)
    }

    pub fn passes(&self, check: &str) -> bool {
        self.get(check).map(|c| c.pass).unwrap_or(false)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report: {}", self.subject)?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {} ({} cases)",
                if c.pass { "PASS" } else { "FAIL" },
                c.check,
                c.cases
            )?;
            if let Some(note) = &c.note {
                writeln!(f, "        note: {note}")?;
            }
            if let Some(cx) = &c.counterexample {
                writeln!(f, "        counterexample {cx}")?;
            }
            for ev in &c.evaluations {
                writeln!(f, "        {ev}")?;
            }
        }
        let failed = self.failures().count();
        if failed == 0 {
            write!(f, "  all {} checks pass", self.checks.len())
        } else {
            write!(f, "  {failed} of {} checks fail", self.checks.len())
        }
    }
}
