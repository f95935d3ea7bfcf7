// SPDX-License-Identifier: Apache-2.0

//! Torus catalogs, the divisibility of k₇ and k₉, and the prime-graph targets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::json;

use super::{Claim, Outcome, VerifyConfig};
use crate::catalog::{torus_catalog, validate, valid_shapes, Group};
use crate::cyclo::greatest_primitive_divisor;
use crate::gkgraph::{build_graph, divisibility_witnesses, independence_number, local_coclique, GraphMode};
use crate::numtheory::SignChoice;

/// Rows whose printed cells do not describe a torus of the right rank.
pub const FLAGGED_E7: [&str; 3] = ["E7-14L", "E7-14R", "E7-15L"];
pub const FLAGGED_E8: [&str; 3] = ["E8-01L+E7-14L", "E8-01L+E7-14R", "E8-01L+E7-15L"];

fn err(e: impl ToString) -> String {
    e.to_string()
}

pub(super) fn register(claims: &mut Vec<Claim>, config: &VerifyConfig) {
    for (group, tag, caption, flagged) in [
        (Group::E7, "TAB2", "maximal tori of (2,q-1).E_7(q)", FLAGGED_E7),
        (Group::E8, "TAB3", "maximal tori of E_8(q)", FLAGGED_E8),
    ] {
        let rank = group.rank();
        claims.push(Claim::new(
            format!("{tag}.degree"),
            format!("table of {caption}"),
            format!("Σ deg = {rank} for every torus"),
            format!("every valid {group} row has cyclotomic degree {rank}"),
            move |_| {
                let shapes = torus_catalog(group);
                let bad: Vec<_> = valid_shapes(group)
                    .filter(|s| s.degree() != Some(rank))
                    .map(|s| json!({ "row": s.row_id, "degree": s.degree() }))
                    .collect();
                Ok(Outcome::check(
                    bad.is_empty(),
                    json!({ "rows": shapes.len(), "valid": valid_shapes(group).count(), "wrong_degree": bad }),
                ))
            },
        ));
        claims.push(Claim::new(
            format!("{tag}.display"),
            format!("table of {caption}"),
            "printed cells read at εq",
            format!("printed {group} cells agree with their cyclotomic factors on sampled (q, ε)"),
            move |_| {
                let report = validate(group);
                Ok(Outcome::check(
                    report.is_clean(),
                    json!({
                        "samples": report.samples,
                        "rows_checked": report.valid,
                        "mismatches": serde_json::to_value(&report.display_mismatches).map_err(err)?,
                    }),
                ))
            },
        ));
        claims.push(Claim::new(
            format!("{tag}.flagged"),
            format!("table of {caption}"),
            "rows not of the form of a maximal torus",
            format!("the flagged {group} rows are exactly the documented ones"),
            move |_| {
                let report = validate(group);
                let got: BTreeSet<&str> = report.flagged.iter().map(|f| f.row_id.as_str()).collect();
                let want: BTreeSet<&str> = flagged.into_iter().collect();
                Ok(Outcome::check(
                    got == want,
                    json!({ "flagged": serde_json::to_value(&report.flagged).map_err(err)?, "documented": want }),
                ))
            },
        ));
    }

    for &q in &config.odd_qs {
        claims.push(Claim::new(
            format!("LDIV.q{q}"),
            "divisibility lemma for k_7 and k_9",
            "k_7(εq) divides only the integer (q^7-ε1)/2",
            format!("at q = {q}, k₇(εq) and k₉(εq) each divide a single torus order"),
            move |_| divisibility(q),
        ));
        claims.push(Claim::new(
            format!("T.q{q}"),
            "coclique numbers of E_7(q) and the row of 2",
            "t(E_7(q))=8; ρ(2) = {2, r_14, r_18} or {2, r_7, r_9}",
            format!("at q = {q}: t = 8, t(2) = 3 and the classes of ρ(2)"),
            move |_| graph_targets(q),
        ));
    }
}

fn divisibility(q: u64) -> Result<Outcome, String> {
    let qb = BigInt::from(q);
    let eps = SignChoice::canonical_for(&qb).ok_or("q must be odd")?;
    let u = eps.apply(&qb);
    let expected_order = |i: u64| -> BigInt {
        let u6 = num_traits::pow(u.clone(), 6);
        match i {
            7 => {
                let v: BigInt = &u6 * &u - 1;
                v.abs()
            }
            _ => {
                let v: BigInt = (&u - BigInt::one()) * (u6 + num_traits::pow(u.clone(), 3) + 1);
                v.abs()
            }
        }
    };
    let mut ok = true;
    let mut evidence = serde_json::Map::new();
    evidence.insert("eps".into(), eps.to_string().into());
    for i in [7u64, 9] {
        let k = greatest_primitive_divisor(&u, i).map_err(err)?;
        let here = divisibility_witnesses(Group::E7, &qb, eps, &k).map_err(err)?;
        let there = divisibility_witnesses(Group::E7, &qb, eps.flip(), &k).map_err(err)?;
        let orders: BTreeSet<&BigInt> = here.iter().map(|(_, o)| o).collect();
        let single = orders.len() == 1 && orders.contains(&expected_order(i)) && there.is_empty();
        ok &= single && !k.is_one();
        evidence.insert(
            format!("k{i}"),
            json!({
                "value": k.to_string(),
                "rows": here.iter().map(|(r, _)| r.clone()).collect::<Vec<_>>(),
                "orders": orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                "rows_at_minus_eps": there.len(),
            }),
        );
    }
    Ok(Outcome::check(ok, evidence.into()))
}

fn graph_targets(q: u64) -> Result<Outcome, String> {
    let qb = BigInt::from(q);
    let g = build_graph(Group::E7, &qb, GraphMode::WithTwo).map_err(err)?;
    let t = independence_number(&g);
    let two = BigInt::from(2);
    let t2 = local_coclique(&g, &two).map_err(err)?;
    let mut rho: Vec<u64> = t2
        .witness
        .iter()
        .zip(&t2.classes)
        .filter(|(p, _)| **p != two)
        .map(|(_, &c)| c)
        .collect();
    rho.sort_unstable();
    let expect: Vec<u64> = if q % 4 == 1 { vec![14, 18] } else { vec![7, 9] };
    let ok = t.size == 8 && t2.size == 3 && rho == expect;
    Ok(Outcome::check(
        ok,
        json!({
            "t": t.size,
            "witness": t.witness.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "t2": t2.size,
            "rho2": t2.witness.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "rho2_classes": rho,
            "expected_classes": expect,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::super::Status;
    use super::*;

    #[test]
    fn q5_targets_and_divisibility() {
        let d = divisibility(5).unwrap();
        assert_eq!(d.status, Status::Pass, "{}", d.evidence);
        assert_eq!(d.evidence["k7"]["rows"], json!(["E7-19R"]));
        let t = graph_targets(5).unwrap();
        assert_eq!(t.status, Status::Pass, "{}", t.evidence);
        assert_eq!(t.evidence["rho2_classes"], json!([14, 18]));
    }

    #[test]
    fn even_q_is_an_error() {
        assert!(divisibility(4).is_err());
    }
}
