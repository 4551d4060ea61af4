//! Check outcomes and the report record shared with the command-line front end.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Result of one check. A failing verdict always carries a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<String>,
    /// Free-form measurements (certified region, residuals, ...).
    pub detail: Option<String>,
}

impl Verdict {
    pub fn pass() -> Verdict {
        Verdict { status: Status::Pass, witness: None, detail: None }
    }

    pub fn fail(witness: impl Into<String>) -> Verdict {
        Verdict { status: Status::Fail, witness: Some(witness.into()), detail: None }
    }

    pub fn skipped(reason: impl Into<String>) -> Verdict {
        Verdict { status: Status::Skipped, witness: None, detail: Some(reason.into()) }
    }

    pub fn from_witness(w: Option<String>) -> Verdict {
        match w {
            None => Verdict::pass(),
            Some(w) => Verdict::fail(w),
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Verdict {
        self.detail = Some(d.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Pass iff every verdict passes; the first failure's witness is kept.
    pub fn all(vs: impl IntoIterator<Item = (String, Verdict)>) -> Verdict {
        let mut details = Vec::new();
        for (name, v) in vs {
            if v.status == Status::Fail {
                return Verdict::fail(format!("{name}: {}", v.witness.unwrap_or_default()));
            }
            if let Some(d) = v.detail {
                details.push(format!("{name}: {d}"));
            }
        }
        let v = Verdict::pass();
        if details.is_empty() {
            v
        } else {
            v.with_detail(details.join("; "))
        }
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn new(suite: &str, check: &str, params: &[(&str, String)], verdict: Verdict, elapsed_ms: u64) -> CheckReport {
        CheckReport {
            suite: suite.to_string(),
            check: check.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            status: verdict.status,
            witness: verdict.witness,
            detail: verdict.detail,
            elapsed_ms,
        }
    }
}
