//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

/// One record of the verification run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    /// Witness or counterexample summary; deterministic given field and seed.
    pub detail: String,
    /// Wall-clock milliseconds; informational only.
    pub elapsed_ms: u64,
}

/// The full report: overall passes iff every record passes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub field: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub overall: CheckStatus,
}

impl VerificationReport {
    pub fn new(field: String, seed: u64) -> VerificationReport {
        VerificationReport {
            field,
            seed,
            checks: Vec::new(),
            overall: CheckStatus::Pass,
        }
    }

    pub fn push(&mut self, name: &str, status: CheckStatus, detail: String, elapsed_ms: u64) {
        match (&self.overall, &status) {
            (_, CheckStatus::Fail) => self.overall = CheckStatus::Fail,
            (CheckStatus::Pass, CheckStatus::Inconclusive) => {
                self.overall = CheckStatus::Inconclusive
            }
            _ => {}
        }
        self.checks.push(CheckRecord {
            name: name.into(),
            status,
            detail,
            elapsed_ms,
        });
    }

    pub fn passed(&self) -> bool {
        matches!(self.overall, CheckStatus::Pass)
    }

    pub fn inconclusive(&self) -> bool {
        matches!(self.overall, CheckStatus::Inconclusive)
    }

    /// One `PASS`/`FAIL`/`INCONCLUSIVE` line per check.
    pub fn render_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Inconclusive => "INCONCLUSIVE",
            };
            out.push_str(&format!(
                "[{tag}] {} ({} ms): {}\n",
                c.name, c.elapsed_ms, c.detail
            ));
        }
        out
    }
}
