// SPDX-License-Identifier: Apache-2.0

use lieprime_core::catalog::Group;
use lieprime_core::cyclo::greatest_primitive_divisor;
use lieprime_core::gkgraph::{
    build_graph, compact_projection, divisibility_witnesses, independence_number, local_coclique, ClassLabel,
    GraphMode,
};
use lieprime_core::numtheory::SignChoice;
use lieprime_core::Exec;
use num_bigint::BigInt;

const ODD_QS: [u64; 9] = [5, 7, 9, 11, 13, 19, 23, 25, 27];

#[test]
fn e7_targets_for_odd_q() {
    let rows = Exec::Parallel.map(&ODD_QS, |&q| {
        let qb = BigInt::from(q);
        let g = build_graph(Group::E7, &qb, GraphMode::WithTwo).unwrap();
        let t = independence_number(&g);
        let t2 = local_coclique(&g, &BigInt::from(2)).unwrap();
        let mut rho: Vec<u64> = t2.classes.iter().skip(1).copied().collect();
        rho.sort_unstable();
        let compact = compact_projection(&g).map(|c| c.labels().len());
        (q, t.size, t2.size, rho, compact)
    });
    for (q, t, t2, rho, compact) in rows {
        assert_eq!(t, 8, "q = {q}");
        assert_eq!(t2, 3, "q = {q}");
        let expect = if q % 4 == 1 { vec![14, 18] } else { vec![7, 9] };
        assert_eq!(rho, expect, "q = {q}");
        assert!(compact.unwrap() <= 14, "q = {q}");
    }
}

#[test]
fn k7_and_k9_each_divide_one_family() {
    for q in ODD_QS {
        let qb = BigInt::from(q);
        let eps = SignChoice::canonical_for(&qb).unwrap();
        let u = eps.apply(&qb);
        for (i, row) in [(7, "E7-19R"), (9, "E7-01R")] {
            let k = greatest_primitive_divisor(&u, i).unwrap();
            let here = divisibility_witnesses(Group::E7, &qb, eps, &k).unwrap();
            let mut orders: Vec<&BigInt> = here.iter().map(|(_, o)| o).collect();
            orders.dedup();
            assert_eq!(orders.len(), 1, "q={q} i={i}");
            assert_eq!(here[0].0, row);
            let there = divisibility_witnesses(Group::E7, &qb, eps.flip(), &k).unwrap();
            assert!(there.is_empty(), "q={q} i={i}");
        }
    }
}

#[test]
fn e8_two_row_and_size() {
    for q in [3u64, 5, 7] {
        let g = build_graph(Group::E8, &BigInt::from(q), GraphMode::WithTwo).unwrap();
        let t2 = local_coclique(&g, &BigInt::from(2)).unwrap();
        let mut rho: Vec<u64> = t2.classes.iter().skip(1).copied().collect();
        rho.sort_unstable();
        assert_eq!(rho, vec![15, 20, 24, 30], "q = {q}");
        assert_eq!(independence_number(&g).size, 12, "q = {q}");
    }
}

#[test]
fn e8_compact_form_detects_the_five_exception() {
    // q² ≡ −1 (mod 5) puts 5 in R₄ and makes it divide Φ₂₀(q).
    let g = build_graph(Group::E8, &BigInt::from(3), GraphMode::Semisimple).unwrap();
    let c = compact_projection(&g).unwrap();
    assert!(c.adjacent(&ClassLabel::Class(4), &ClassLabel::Class(20)));
    // At q = 13, R₄ = {5, 17} and only 5 meets R₂₀.
    let g = build_graph(Group::E8, &BigInt::from(13), GraphMode::Semisimple).unwrap();
    let err = compact_projection(&g).unwrap_err().to_string();
    assert!(err.contains("R4") && err.contains("R20"), "{err}");
    // q² ≡ 1 (mod 5): no exception.
    let g = build_graph(Group::E8, &BigInt::from(11), GraphMode::Semisimple).unwrap();
    let c = compact_projection(&g).unwrap();
    assert!(!c.adjacent(&ClassLabel::Class(4), &ClassLabel::Class(20)));
}
