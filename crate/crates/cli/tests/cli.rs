// SPDX-License-Identifier: Apache-2.0

mod common;

use std::fs;

use common::{exit_matrix, exit_mismatches, lieprime, stdout};
use serde_json::Value;

#[test]
fn exit_codes_follow_the_fixture() {
    assert!(exit_matrix().len() > 30);
    let bad = exit_mismatches();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn plain_answers() {
    assert_eq!(stdout(&lieprime(&["order", "41", "5"])).trim(), "20");
    assert_eq!(stdout(&lieprime(&["kprim", "5", "4"])).trim(), "13");
    assert_eq!(stdout(&lieprime(&["factor", "78126"])).trim(), "78126 = 2 · 3 · 29 · 449");
    assert_eq!(stdout(&lieprime(&["cyclo", "12"])).trim(), "x^4 - x^2 + 1");
    let c = stdout(&lieprime(&["coclique", "E7", "5"]));
    assert!(c.starts_with("size 8\n"), "{c}");
    assert!(c.contains("19531 (e=7)") && c.contains("5167 (e=18)"), "{c}");
}

#[test]
fn json_mode_prints_one_document() {
    for args in [
        &["--json", "order", "41", "5"][..],
        &["--json", "tori", "E8", "5"],
        &["--json", "graph", "E7", "5"],
        &["--json", "verify", "--filter", "L2"],
        &["--json", "claims", "list"],
    ] {
        let o = lieprime(args);
        assert!(o.status.success(), "{args:?}");
        let _: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
    let err = lieprime(&["--json", "tori", "E7", "4"]);
    assert_eq!(err.status.code(), Some(2));
    assert!(err.stdout.is_empty());
    assert!(!err.stderr.is_empty());
}

#[test]
fn big_integers_are_strings_unless_raw() {
    let o = lieprime(&["--json", "tori", "E8", "27"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let order = &v["rows"][0]["order"];
    assert!(order.is_string());
    let raw = lieprime(&["--json", "--raw-numbers", "tori", "E8", "27"]);
    let r: Value = serde_json::from_slice(&raw.stdout).unwrap();
    assert!(r["rows"][0]["order"].is_number());
    assert_eq!(r["rows"][0]["order"].to_string(), order.as_str().unwrap());
    assert_eq!(r["eps"], "+");
}

#[test]
fn graph_json_round_trip_keeps_cocliques() {
    let dir = std::env::temp_dir().join(format!("lieprime-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    for (group, q) in [("E7", "5"), ("E7", "11"), ("E8", "7")] {
        let g = lieprime(&["--json", "graph", group, q]);
        assert!(g.status.success());
        let file = dir.join(format!("{group}-{q}.json"));
        fs::write(&file, &g.stdout).unwrap();
        let path = file.to_str().unwrap();
        for anchor in [None, Some("2")] {
            let mut direct = vec!["--json", "coclique", group, q];
            let mut again = vec!["--json", "check-graph", path];
            if let Some(a) = anchor {
                direct.extend(["--anchor", a]);
                again.extend(["--anchor", a]);
            }
            let a: Value = serde_json::from_slice(&lieprime(&direct).stdout).unwrap();
            let b: Value = serde_json::from_slice(&lieprime(&again).stdout).unwrap();
            assert_eq!(a, b, "{group}({q}) anchor {anchor:?}");
        }
    }
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn dot_output() {
    let o = stdout(&lieprime(&["graph", "E7", "5", "--dot"]));
    assert!(o.starts_with("graph") && o.trim_end().ends_with('}'), "{o}");
}
