//! Machine-readable suite reports with deterministic serialization.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    /// short tag naming the formula or identity the check exercises
    #[serde(rename = "ref")]
    pub reference: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_discrepancy: Option<String>,
}

impl CheckResult {
    pub fn from_outcome(id: &str, reference: &str, outcome: Result<(), String>) -> Self {
        match outcome {
            Ok(()) => CheckResult {
                id: id.into(),
                reference: reference.into(),
                status: CheckStatus::Pass,
                first_discrepancy: None,
            },
            Err(d) => CheckResult {
                id: id.into(),
                reference: reference.into(),
                status: CheckStatus::Fail,
                first_discrepancy: Some(d),
            },
        }
    }

    pub fn skipped(id: &str, reference: &str, why: &str) -> Self {
        CheckResult {
            id: id.into(),
            reference: reference.into(),
            status: CheckStatus::Skipped,
            first_discrepancy: Some(why.into()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    /// zero unless timing output was requested, keeping reports byte-stable
    pub wall_time_ms: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        SuiteReport {
            suite: suite.into(),
            seed,
            wall_time_ms: 0,
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Helper turning a boolean check into an outcome with a canned message.
pub fn expect_true(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{} failed", what))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_serialize_sorted() {
        let report = SuiteReport::new(
            "demo",
            1,
            vec![
                CheckResult::from_outcome("b-second", "x", Ok(())),
                CheckResult::from_outcome("a-first", "y", Ok(())),
            ],
        );
        assert_eq!(report.checks[0].id, "a-first");
        let json = report.to_json();
        assert!(json.contains("\"suite\": \"demo\""));
        assert!(!json.contains("first_discrepancy"));
    }

    #[test]
    fn failure_records_discrepancy() {
        let r = CheckResult::from_outcome("x", "t", Err("rho^2: 1 vs 2".into()));
        assert_eq!(r.status, CheckStatus::Fail);
        assert!(r.first_discrepancy.is_some());
    }
}
