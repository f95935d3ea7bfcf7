// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::process::{Command, Output};

pub fn lieprime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieprime"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// `(expected status, argv)` rows of `fixtures/exit_codes.tsv`.
pub fn exit_matrix() -> Vec<(i32, Vec<String>)> {
    include_str!("../fixtures/exit_codes.tsv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (code, args) = l.split_once('\t').expect("tab-separated row");
            (code.parse().expect("numeric status"), args.split_whitespace().map(String::from).collect())
        })
        .collect()
}

/// Rows whose actual status differs from the fixture.
pub fn exit_mismatches() -> Vec<String> {
    exit_matrix()
        .into_iter()
        .filter_map(|(want, args)| {
            let argv: Vec<&str> = args.iter().map(String::as_str).collect();
            let got = lieprime(&argv).status.code().unwrap_or(-1);
            (got != want).then(|| format!("`{}`: want {want}, got {got}", args.join(" ")))
        })
        .collect()
}
