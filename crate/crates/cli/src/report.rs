//! The verification report and its entries.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Lattice,
    Config,
    Jacobian,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Lattice => "lattice",
            Group::Config => "config",
            Group::Jacobian => "jacobian",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub group: Group,
    /// Acceptance criterion this check belongs to, 1 to 11.
    pub criterion: u8,
    pub description: String,
    pub status: Status,
    /// Computed values next to the expected ones.
    pub details: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub filter: Option<String>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(seed: u64, filter: Option<String>, checks: Vec<Check>) -> Report {
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            filter,
            checks,
            summary,
        }
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.id.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn check(id: &str, status: Status) -> Check {
        Check {
            id: id.to_string(),
            group: Group::Config,
            criterion: 9,
            description: String::new(),
            status,
            details: json!({ "x": "1/2" }),
        }
    }

    #[test]
    fn summary_counts_and_round_trip() {
        let r = Report::new(
            3,
            None,
            vec![
                check("a", Status::Pass),
                check("b", Status::Fail),
                check("c", Status::Skipped),
            ],
        );
        assert_eq!(
            r.summary,
            Summary {
                total: 3,
                passed: 1,
                failed: 1,
                skipped: 1
            }
        );
        assert_eq!(r.failed_ids(), ["b"]);
        let back: Report = serde_json::from_str(&r.to_json()).expect("parse");
        assert_eq!(back, r);
    }
}
