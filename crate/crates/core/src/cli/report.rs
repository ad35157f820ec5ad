use serde::Serialize;
use serde_json::Value;

use super::RunConfig;
use crate::certs::CertReport;
use crate::identities::{Status, VerificationReport};
use crate::psers::SeriesReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemKind {
    Identity,
    Proof,
    Series,
}

impl ItemKind {
    fn label(self) -> &'static str {
        match self {
            ItemKind::Identity => "identity",
            ItemKind::Proof => "proof",
            ItemKind::Series => "series",
        }
    }
}

/// One per-item record of the report.
#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub kind: ItemKind,
    pub id: String,
    pub status: Status,
    pub trials: u64,
    pub succeeded: u64,
    pub rejects: u64,
    pub elapsed_ms: u64,
    /// Kind-specific counters (index maxima, residual counts, order).
    pub detail: Value,
    /// The first failing trial with its full point, or null.
    pub first_failure: Value,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl Item {
    pub fn from_verification(r: VerificationReport) -> Self {
        Item {
            kind: ItemKind::Identity,
            id: r.id.clone(),
            status: r.status,
            trials: r.trials,
            succeeded: r.succeeded,
            rejects: r.rejected,
            elapsed_ms: r.elapsed_ms,
            detail: serde_json::json!({
                "attempted": r.attempted,
                "unguarded_poles": r.unguarded_poles,
                "max_indices": r.max_indices,
            }),
            first_failure: to_value(&r.counterexample),
        }
    }

    pub fn from_certificate(r: CertReport) -> Self {
        Item {
            kind: ItemKind::Proof,
            id: r.id.clone(),
            status: r.status,
            trials: r.trials,
            succeeded: r.succeeded,
            rejects: r.rejected,
            elapsed_ms: r.elapsed_ms,
            detail: serde_json::json!({ "attempted": r.attempted, "checks": r.checks }),
            first_failure: to_value(&r.failure),
        }
    }

    pub fn from_series(r: SeriesReport) -> Self {
        Item {
            kind: ItemKind::Series,
            id: r.id.clone(),
            status: r.status,
            trials: r.trials,
            succeeded: r.succeeded,
            rejects: r.rejected,
            elapsed_ms: r.elapsed_ms,
            detail: serde_json::json!({ "attempted": r.attempted, "order": r.order }),
            first_failure: to_value(&r.failure),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub items: usize,
    pub passed: usize,
    pub failed: usize,
    pub retry_exhausted: usize,
    pub all_passed: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub items: Vec<Item>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, items: Vec<Item>, elapsed_ms: u64) -> Self {
        let count = |s: Status| items.iter().filter(|i| i.status == s).count();
        let summary = Summary {
            items: items.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            retry_exhausted: count(Status::RetryExhausted),
            all_passed: items.iter().all(|i| i.status == Status::Pass),
            elapsed_ms,
        };
        Report { config, items, summary }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    for item in &r.items {
        out += &format!(
            "{:<16} {:<9} {:<26} {}/{} rejects={} {}ms\n",
            item.status.to_string(),
            item.kind.label(),
            item.id,
            item.succeeded,
            item.trials,
            item.rejects,
            item.elapsed_ms
        );
        if !item.first_failure.is_null() {
            out += &format!("    first failure: {}\n", item.first_failure);
        }
    }
    let s = &r.summary;
    out += &format!(
        "summary: {} items, {} passed, {} failed, {} retry-exhausted, {}ms\n",
        s.items, s.passed, s.failed, s.retry_exhausted, s.elapsed_ms
    );
    out
}
