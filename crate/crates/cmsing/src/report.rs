//! Machine-readable verification reports.
//!
//! Reports serialize deterministically: checks are sorted by name before
//! serialization and all content is derived from exact arithmetic, so two
//! runs with the same configuration produce byte-identical JSON.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be completed within its configured work budget.
    /// Reported, but does not fail a run on its own.
    SkippedBudget,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Human-readable witness: the identity verified, a counterexample
    /// residual, or the budget that was exhausted.
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

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::SkippedBudget,
            detail: detail.into(),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            CheckResult::pass(name, detail)
        } else {
            CheckResult::fail(name, detail)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: serde_json::Value,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, config: serde_json::Value) -> Self {
        VerificationReport {
            suite: suite.into(),
            config,
            checks: Vec::new(),
            passed: 0,
            failed: 0,
            skipped: 0,
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        match check.status {
            Status::Pass => self.passed += 1,
            Status::Fail => self.failed += 1,
            Status::SkippedBudget => self.skipped += 1,
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Canonical JSON: checks sorted by name, pretty-printed with stable
    /// key order (struct fields serialize in declaration order).
    pub fn to_canonical_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.checks.sort_by(|a, b| a.name.cmp(&b.name));
        let mut s = serde_json::to_string_pretty(&sorted).expect("report serialization");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counters_and_determinism() {
        let mut r = VerificationReport::new("demo", serde_json::json!({"d": 4}));
        r.push(CheckResult::pass("b-check", "ok"));
        r.push(CheckResult::fail("a-check", "residual nonzero"));
        r.push(CheckResult::skipped("c-check", "budget 10"));
        assert_eq!((r.passed, r.failed, r.skipped), (1, 1, 1));
        assert!(!r.all_passed());
        let j1 = r.to_canonical_json();
        let j2 = r.to_canonical_json();
        assert_eq!(j1, j2);
        // sorted by name regardless of insertion order
        let a = j1.find("a-check").unwrap();
        let b = j1.find("b-check").unwrap();
        let c = j1.find("c-check").unwrap();
        assert!(a < b && b < c);
        // round-trips
        let back: VerificationReport = serde_json::from_str(&j1).unwrap();
        assert_eq!(back.checks.len(), 3);
    }
}
