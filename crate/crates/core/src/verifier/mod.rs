// SPDX-License-Identifier: Apache-2.0

//! A registry of arithmetic claims, each re-checked exactly and reported as
//! pass, fail, warn, skip or not-applicable.
//!
//! Claim ids are dot-separated and sorted segment by segment, numeric
//! segments numerically. A filter selects an id when it equals the id or a
//! leading run of its segments; hyphens in a filter are ignored, so `L-E8`
//! selects the `LE8.*` claims.

mod arith;
mod proofs;
mod tables;

pub use tables::{FLAGGED_E7, FLAGGED_E8};

use std::cmp::Ordering;
use std::fmt::{self, Write as _};
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Warn,
    Skip,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Warn => "warn",
            Status::Skip => "skip",
            Status::NotApplicable => "not-applicable",
        })
    }
}

/// What a claim body returns.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub evidence: Value,
}

impl Outcome {
    pub fn new(status: Status, evidence: Value) -> Self {
        Self { status, evidence }
    }

    /// Pass when `ok`, fail otherwise.
    pub fn check(ok: bool, evidence: Value) -> Self {
        Self::new(if ok { Status::Pass } else { Status::Fail }, evidence)
    }
}

type Body = Box<dyn Fn(&VerifyConfig) -> Result<Outcome, String> + Send + Sync>;

pub struct Claim {
    pub id: String,
    /// Where in the source the assertion is made.
    pub paper_ref: String,
    /// The assertion, formula only.
    pub quote: String,
    pub description: String,
    body: Body,
}

impl Claim {
    pub fn new<F>(
        id: impl Into<String>,
        paper_ref: impl Into<String>,
        quote: impl Into<String>,
        description: impl Into<String>,
        body: F,
    ) -> Self
    where
        F: Fn(&VerifyConfig) -> Result<Outcome, String> + Send + Sync + 'static,
    {
        Self {
            id: id.into(),
            paper_ref: paper_ref.into(),
            quote: quote.into(),
            description: description.into(),
            body: Box::new(body),
        }
    }

    /// Runs the body; errors and panics become `skip` with the message as
    /// evidence.
    pub fn execute(&self, config: &VerifyConfig) -> ClaimRecord {
        let outcome = match catch_unwind(AssertUnwindSafe(|| (self.body)(config))) {
            Ok(Ok(o)) => o,
            Ok(Err(e)) => Outcome::new(Status::Skip, serde_json::json!({ "error": e })),
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "claim panicked".into());
                Outcome::new(Status::Skip, serde_json::json!({ "error": msg }))
            }
        };
        ClaimRecord {
            id: self.id.clone(),
            paper_ref: self.paper_ref.clone(),
            quote: self.quote.clone(),
            description: self.description.clone(),
            status: outcome.status,
            evidence: outcome.evidence,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub paper_ref: String,
    pub quote: String,
    pub description: String,
    pub status: Status,
    pub evidence: Value,
}

/// Sweep bounds. Raising a bound changes runtime, never a status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// |a| bound and index bound of the primitive-divisor existence sweep.
    pub zsig_a: i64,
    pub zsig_i: u64,
    /// |a| bound and index bound of the kᵢ oracle sweeps.
    pub star_a: i64,
    pub star_i: u64,
    /// Prime and cofactor bounds for the Φ_{pm} identities.
    pub cyclo_p: u64,
    pub cyclo_m: u64,
    /// Index bound for Φ_{2m} = Φ_m(−x) and ∏ Φ_d = x^m − 1.
    pub cyclo_index: u64,
    pub lte_a: i64,
    pub lte_m: u32,
    pub lte_r: u64,
    /// Upper end of n for the kᵢ estimates.
    pub estimate_n: u64,
    /// Odd field orders for the graph and divisibility targets.
    pub odd_qs: Vec<u64>,
    /// Field orders for the torus-order size check.
    pub torus_qs: Vec<u64>,
    /// Upper end of the q and u sweeps.
    pub sweep_q: u64,
    pub leven_m: u64,
    pub leven_k: u64,
    pub lan_n: (u64, u64),
    pub lan_u: u64,
    /// Upper end of u in the Diophantine enumeration.
    pub dioph_u: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            zsig_a: 20,
            zsig_i: 14,
            star_a: 20,
            star_i: 18,
            cyclo_p: 50,
            cyclo_m: 50,
            cyclo_index: 200,
            lte_a: 30,
            lte_m: 12,
            lte_r: 31,
            estimate_n: 1000,
            odd_qs: vec![5, 7, 9, 11, 13, 19, 23, 25, 27],
            torus_qs: vec![4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 25, 27],
            sweep_q: 1000,
            leven_m: 6,
            leven_k: 8,
            lan_n: (13, 31),
            lan_u: 20,
            dioph_u: 100_000,
        }
    }
}

pub struct Registry {
    claims: Vec<Claim>,
    config: VerifyConfig,
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            claims: Vec::new(),
            config: VerifyConfig::default(),
        }
    }

    /// Every built-in claim, run with `config`.
    pub fn standard(config: VerifyConfig) -> Self {
        let mut claims = Vec::new();
        arith::register(&mut claims, &config);
        tables::register(&mut claims, &config);
        proofs::register(&mut claims, &config);
        claims.sort_by(|a, b| id_order(&a.id, &b.id));
        Self { claims, config }
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.config
    }

    pub fn push(&mut self, claim: Claim) {
        assert!(self.claims.iter().all(|c| c.id != claim.id), "duplicate claim id {}", claim.id);
        self.claims.push(claim);
        self.claims.sort_by(|a, b| id_order(&a.id, &b.id));
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    pub fn len(&self) -> usize {
        self.claims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.claims.is_empty()
    }

    /// Runs the claims selected by `filter` (all when empty), ordered by id.
    pub fn run(&self, filter: &str, exec: Exec) -> Vec<ClaimRecord> {
        let selected: Vec<&Claim> = self.claims.iter().filter(|c| id_matches(&c.id, filter)).collect();
        exec.map(&selected, |c| c.execute(&self.config))
    }
}

/// Runs the standard registry with default bounds.
pub fn run_claims(filter: &str) -> Vec<ClaimRecord> {
    Registry::standard(VerifyConfig::default()).run(filter, Exec::default())
}

/// True when `filter` selects `id`.
pub fn id_matches(id: &str, filter: &str) -> bool {
    let f: String = filter.trim().chars().filter(|&c| c != '-').collect();
    if f.is_empty() {
        return true;
    }
    let id: String = id.chars().filter(|&c| c != '-').collect();
    if f.ends_with('.') {
        return id.starts_with(&f);
    }
    id == f || id.strip_prefix(&f).is_some_and(|rest| rest.starts_with('.'))
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Segment<'a> {
    Num(u64),
    Text(&'a str),
}

fn segments(id: &str) -> Vec<Segment<'_>> {
    id.split('.')
        .map(|s| s.parse().map(Segment::Num).unwrap_or(Segment::Text(s)))
        .collect()
}

/// Segment-wise order with numeric segments compared as numbers.
pub fn id_order(a: &str, b: &str) -> Ordering {
    segments(a).cmp(&segments(b))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub warn: usize,
    pub skip: usize,
    #[serde(rename = "not-applicable")]
    pub not_applicable: usize,
}

impl Summary {
    pub fn of(records: &[ClaimRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Warn => s.warn += 1,
                Status::Skip => s.skip += 1,
                Status::NotApplicable => s.not_applicable += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub version: String,
    pub timestamp: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub header: Header,
    pub claims: Vec<ClaimRecord>,
    pub summary: Summary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl Report {
    pub fn new(records: Vec<ClaimRecord>, timestamp: impl Into<String>) -> Self {
        let summary = Summary::of(&records);
        Self {
            header: Header {
                version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp: timestamp.into(),
            },
            claims: records,
            summary,
        }
    }

    /// 1 when any claim failed, else 0. Warnings do not fail.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }
}

/// Serializes the records. Only the header depends on `timestamp`.
pub fn emit_report(records: &[ClaimRecord], format: ReportFormat, timestamp: &str) -> String {
    let report = Report::new(records.to_vec(), timestamp);
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
        ReportFormat::Text => {
            let width = records.iter().map(|r| r.id.len()).max().unwrap_or(0);
            let mut out = String::new();
            for r in records {
                let _ = writeln!(
                    out,
                    "{:<5} {:<width$}  {}",
                    r.status.to_string().to_uppercase().chars().take(5).collect::<String>(),
                    r.id,
                    r.description
                );
                if matches!(r.status, Status::Fail | Status::Warn | Status::Skip) {
                    let _ = writeln!(out, "      evidence: {}", r.evidence);
                }
            }
            let s = report.summary;
            let _ = writeln!(
                out,
                "summary: {} pass, {} fail, {} warn, {} skip, {} not-applicable",
                s.pass, s.fail, s.warn, s.skip, s.not_applicable
            );
            out
        }
    }
}

/// Exit status recommended for a set of records.
pub fn exit_code(records: &[ClaimRecord]) -> i32 {
    i32::from(records.iter().any(|r| r.status == Status::Fail))
}

/// Counts checked cases and keeps the first few failures.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    checked: u64,
    failures: Vec<Value>,
    failed: u64,
}

impl Tally {
    const KEEP: usize = 5;

    pub fn record(&mut self, ok: bool, case: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < Self::KEEP {
                self.failures.push(case());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn evidence(&self, mut extra: Value) -> Value {
        if let Value::Object(map) = &mut extra {
            map.insert("checked".into(), self.checked.into());
            map.insert("failed".into(), self.failed.into());
            if !self.failures.is_empty() {
                map.insert("failures".into(), Value::Array(self.failures.clone()));
            }
        }
        extra
    }

    pub fn outcome(&self, extra: Value) -> Outcome {
        Outcome::check(self.ok(), self.evidence(extra))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn filter_is_segment_aware() {
        assert!(id_matches("L10.prod.3", "L10"));
        assert!(id_matches("L10.prod.3", "L10.prod"));
        assert!(!id_matches("L10.prod.3", "L10.pr"));
        assert!(!id_matches("L10.3", "L1"));
        assert!(id_matches("L1.sweep", "L1"));
        assert!(id_matches("LE8.e.41.5", "L-E8"));
        assert!(id_matches("LE8.e.41.5", "LE8.e."));
        assert!(id_matches("anything", ""));
        assert!(!id_matches("L10.9", "L10.90"));
    }

    #[test]
    fn ids_sort_numerically() {
        let mut ids = vec!["L10.11", "L10.9", "L10.prod.2", "L10.10", "L1.sweep"];
        ids.sort_by(|a, b| id_order(a, b));
        assert_eq!(ids, vec!["L1.sweep", "L10.9", "L10.10", "L10.11", "L10.prod.2"]);
    }

    #[test]
    fn empty_registry_gives_empty_report() {
        let records = Registry::empty().run("", Exec::Sequential);
        assert!(records.is_empty());
        assert_eq!(exit_code(&records), 0);
        let doc: Value = serde_json::from_str(&emit_report(&records, ReportFormat::Json, "t")).unwrap();
        assert_eq!(doc["summary"]["pass"], 0);
        assert_eq!(doc["claims"], json!([]));
    }

    #[test]
    fn forced_failure_sets_exit_code() {
        let mut reg = Registry::empty();
        reg.push(Claim::new("X.ok", "fixture", "1 = 1", "passes", |_| {
            Ok(Outcome::check(true, json!({})))
        }));
        reg.push(Claim::new("X.bad", "fixture", "1 = 2", "fails", |_| {
            Ok(Outcome::check(false, json!({ "lhs": 1, "rhs": 2 })))
        }));
        let records = reg.run("", Exec::Parallel);
        assert_eq!(records.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["X.bad", "X.ok"]);
        let report = Report::new(records.clone(), "now");
        assert_eq!(report.exit_code(), 1);
        assert_eq!(exit_code(&records), 1);
        let text = emit_report(&records, ReportFormat::Text, "now");
        assert!(text.contains("FAIL  X.bad"));
        assert!(text.contains("1 fail"));
    }

    #[test]
    fn errors_and_panics_become_skip() {
        let mut reg = Registry::empty();
        reg.push(Claim::new("E.err", "fixture", "", "errors", |_| Err("no data".into())));
        reg.push(Claim::new("E.panic", "fixture", "", "panics", |_| panic!("boom")));
        let records = reg.run("", Exec::Sequential);
        assert!(records.iter().all(|r| r.status == Status::Skip));
        assert_eq!(records[0].evidence["error"], "no data");
        assert_eq!(records[1].evidence["error"], "boom");
        assert_eq!(exit_code(&records), 0);
    }

    #[test]
    fn json_body_is_deterministic() {
        let mut reg = Registry::empty();
        for i in 0..20 {
            reg.push(Claim::new(format!("D.{i}"), "fixture", "", "", move |_| {
                Ok(Outcome::check(i % 7 != 3, json!({ "i": i })))
            }));
        }
        let a: Value = serde_json::from_str(&emit_report(&reg.run("", Exec::Parallel), ReportFormat::Json, "a")).unwrap();
        let b: Value =
            serde_json::from_str(&emit_report(&reg.run("", Exec::Sequential), ReportFormat::Json, "b")).unwrap();
        assert_eq!(a["claims"], b["claims"]);
        assert_eq!(a["summary"], b["summary"]);
        assert_ne!(a["header"], b["header"]);
        assert_eq!(a["summary"]["fail"], 3);
    }
}
