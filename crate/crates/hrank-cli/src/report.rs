//! Machine-readable verification reports: one JSON object per graph and a
//! CSV summary of flag counts per order.

use std::collections::BTreeMap;
use std::io::{self, Write};

use hrank::canon::canonical_encoding;
use hrank::checkers::BoundReport;
use hrank::graph::MixedGraph;
use serde::Serialize;

/// FNV-1a 64 over the canonical (isomorphism-invariant) encoding, so equal
/// ids across a run mean equal unlabeled mixed graphs.
pub fn graph_id(g: &MixedGraph) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in canonical_encoding(g) {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Verdict of one checker on one graph.
#[derive(Clone, Serialize, PartialEq, Eq, Debug)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    /// Checker evaluated and its contract held.
    Ok,
    /// Checker evaluated and its contract was violated.
    Fail,
    /// Graph outside the checker's precondition.
    NotApplicable,
    /// Budget or internal error; message in `detail`.
    Error,
}

#[derive(Clone, Serialize, Debug)]
pub struct CheckOutcome {
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn ok() -> CheckOutcome {
        CheckOutcome { status: CheckStatus::Ok, detail: None }
    }

    pub fn fail(detail: String) -> CheckOutcome {
        CheckOutcome { status: CheckStatus::Fail, detail: Some(detail) }
    }

    pub fn not_applicable(detail: String) -> CheckOutcome {
        CheckOutcome { status: CheckStatus::NotApplicable, detail: Some(detail) }
    }

    pub fn error(detail: String) -> CheckOutcome {
        CheckOutcome { status: CheckStatus::Error, detail: Some(detail) }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// Everything recorded about one corpus graph. The MG1 text plus the raw
/// invariants are enough to re-derive every verdict offline.
#[derive(Serialize, Debug)]
pub struct VerificationRow {
    pub index: u64,
    pub graph_id: String,
    pub n: usize,
    pub mg1: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<&'static str, CheckOutcome>,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u128>,
}

impl VerificationRow {
    pub fn to_jsonl(&self) -> String {
        let mut line = serde_json::to_string(self).expect("row serializes");
        line.push('\n');
        line
    }
}

/// Flag counts keyed by (n, flag name), plus a per-order graph count.
#[derive(Default, Clone, Debug)]
pub struct SummaryCounts {
    counts: BTreeMap<(usize, &'static str), u64>,
}

impl SummaryCounts {
    pub fn absorb_row(&mut self, row: &VerificationRow) {
        self.bump(row.n, "graphs");
        if let Some(b) = &row.bounds {
            for (flag, hit) in [
                ("lower_tight", b.lower_tight),
                ("lower_plus_one", b.lower_plus_one),
                ("upper_tight", b.upper_tight),
                ("legacy_lower", b.legacy_lower),
                ("forbidden_hit", b.forbidden_hit),
            ] {
                if hit {
                    self.bump(row.n, flag);
                }
            }
        }
        if !row.violations.is_empty() {
            self.bump(row.n, "violations");
        }
    }

    fn bump(&mut self, n: usize, flag: &'static str) {
        *self.counts.entry((n, flag)).or_insert(0) += 1;
    }

    pub fn total(&self, flag: &str) -> u64 {
        self.counts.iter().filter(|((_, f), _)| *f == flag).map(|(_, c)| c).sum()
    }

    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "n,flag,count")?;
        for ((n, flag), count) in &self.counts {
            writeln!(out, "{n},{flag},{count}")?;
        }
        Ok(())
    }
}
