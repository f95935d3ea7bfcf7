// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use lieprime_core::verifier::{emit_report, run_claims, ReportFormat, Status, Summary};

#[test]
fn full_registry() {
    let records = run_claims("");
    let ids: BTreeSet<&str> = records.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids.len(), records.len(), "claim ids are unique");
    for r in &records {
        assert!(!r.quote.is_empty() && !r.paper_ref.is_empty(), "{}", r.id);
        if r.id != "L10.9" {
            assert_eq!(r.status, Status::Pass, "{}: {}", r.id, r.evidence);
        }
    }
    let nine = records.iter().find(|r| r.id == "L10.9").unwrap();
    assert_eq!(nine.status, Status::Warn, "{}", nine.evidence);
    let s = Summary::of(&records);
    assert_eq!((s.fail, s.warn, s.skip, s.not_applicable), (0, 1, 0, 0));

    // Identical bodies whatever the schedule.
    let again = run_claims("");
    let a: serde_json::Value = serde_json::from_str(&emit_report(&records, ReportFormat::Json, "x")).unwrap();
    let b: serde_json::Value = serde_json::from_str(&emit_report(&again, ReportFormat::Json, "y")).unwrap();
    assert_eq!(a["claims"], b["claims"]);
}

#[test]
fn filters_select_families() {
    let e8 = run_claims("L-E8");
    assert!(e8.iter().all(|r| r.id.starts_with("LE8.") && r.status == Status::Pass));
    for want in ["LE8.e.41.5", "LE8.e.4561.9", "LE8.e.1741.11", "LE8.e.31.13"] {
        assert!(e8.iter().any(|r| r.id == want), "{want}");
    }
    let prod = run_claims("L10.prod");
    assert_eq!(prod.len(), 11);
    assert!(prod.iter().all(|r| r.status == Status::Pass));
    assert!(run_claims("NOPE").is_empty());
}
