//! Verification reports: one record per check, serialized as JSON, CSV or text.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// A value stated in the literature.
    Published,
    /// A value obtained by an independent computation.
    DerivedOracle,
    /// A value that follows immediately from the definitions.
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub expected: String,
    pub provenance: Provenance,
    pub computed: String,
    pub pass: bool,
    pub status: Status,
    pub runtime_ms: u64,
}

impl Check {
    /// Passes iff the two values print identically.
    pub fn exact(id: impl Into<String>, expected: impl Display, computed: impl Display, provenance: Provenance) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let pass = expected == computed;
        Check {
            id: id.into(),
            params: BTreeMap::new(),
            expected,
            provenance,
            computed,
            pass,
            status: if pass { Status::Pass } else { Status::Fail },
            runtime_ms: 0,
        }
    }

    /// A check whose pass flag is decided by the caller.
    pub fn judged(
        id: impl Into<String>,
        expected: impl Display,
        computed: impl Display,
        provenance: Provenance,
        pass: bool,
    ) -> Self {
        let mut c = Check::exact(id, expected, computed, provenance);
        c.pass = pass;
        c.status = if pass { Status::Pass } else { Status::Fail };
        c
    }

    pub fn inconclusive(mut self) -> Self {
        if !self.pass {
            self.status = Status::Inconclusive;
        }
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn timed(mut self, ms: u64) -> Self {
        self.runtime_ms = ms;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub category: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, category: impl Into<String>, checks: Vec<Check>) -> Self {
        let mut summary = Summary { total: checks.len(), ..Summary::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        VerificationReport { suite: suite.into(), category: category.into(), checks, summary }
    }

    pub fn success(&self) -> bool {
        self.summary.failed == 0
    }

    /// Zeroes every runtime so that reports can be compared byte for byte.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.runtime_ms = 0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "category", "id", "params", "expected", "provenance", "computed", "status", "runtime_ms"])
            .expect("in-memory csv write");
        for c in &self.checks {
            let params = serde_json::to_string(&c.params).expect("params serialize");
            let provenance = serde_json::to_value(c.provenance).expect("provenance serializes");
            let status = serde_json::to_value(c.status).expect("status serializes");
            w.write_record([
                self.suite.as_str(),
                self.category.as_str(),
                c.id.as_str(),
                params.as_str(),
                c.expected.as_str(),
                provenance.as_str().unwrap_or_default(),
                c.computed.as_str(),
                status.as_str().unwrap_or_default(),
                c.runtime_ms.to_string().as_str(),
            ])
            .expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf8 csv")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} ({})", self.suite, self.category);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            let _ = writeln!(out, "{tag:<12} {:<48} expected {} computed {}", c.id, c.expected, c.computed);
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} checks: {} passed, {} failed, {} inconclusive",
            s.total, s.passed, s.failed, s.inconclusive
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts() {
        let checks = vec![
            Check::exact("a", 1, 1, Provenance::Trivial),
            Check::exact("b", 1, 2, Provenance::Published),
            Check::exact("c", 1, 2, Provenance::DerivedOracle).inconclusive(),
        ];
        let r = VerificationReport::new("core", "OA", checks);
        assert_eq!(r.summary, Summary { total: 3, passed: 1, failed: 1, inconclusive: 1 });
        assert!(!r.success());
    }

    #[test]
    fn json_round_trip() {
        let r = VerificationReport::new("core", "OA", vec![Check::exact("a", 1, 1, Provenance::Trivial).param("n", 3)]);
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"provenance\": \"trivial\""));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = VerificationReport::new("core", "OA", vec![Check::exact("a,b", 1, 1, Provenance::DerivedOracle)]);
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.contains("\"a,b\""));
        assert!(csv.contains("derived-oracle"));
    }
}
