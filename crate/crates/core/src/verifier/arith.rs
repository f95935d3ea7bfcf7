// SPDX-License-Identifier: Apache-2.0

//! Cyclotomic identities, primitive divisors and the kᵢ estimates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde_json::json;

use super::{Claim, Outcome, Status, Tally, VerifyConfig};
use crate::cyclo::{
    cyclotomic, eval_cyclotomic, greatest_primitive_divisor, estimate_check, prime_divisors, primitive_divisors, Poly,
    ESTIMATE_ITEMS, ZSIGMONDY_EXCEPTIONS,
};
use crate::numtheory::{factorize, is_prime_u64, mult_order, verify_lte, LteClause, LteOutcome, SignChoice};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn bases(bound: i64) -> impl Iterator<Item = i64> {
    (-bound..=bound).filter(|a| a.abs() > 1)
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

pub(super) fn register(claims: &mut Vec<Claim>, config: &VerifyConfig) {
    claims.push(Claim::new(
        "L1.sweep",
        "primitive prime divisor lemma, exception list",
        "(2,1),(2,6),(-2,2),(-2,3),(3,1),(-3,2)",
        "aⁱ − 1 lacks a primitive prime divisor exactly at the listed pairs",
        zsigmondy_sweep,
    ));
    register_cyclotomic(claims);
    register_lte(claims);
    register_star(claims, config);
    register_estimates(claims);
}

fn zsigmondy_sweep(c: &VerifyConfig) -> Result<Outcome, String> {
    let mut found = BTreeSet::new();
    let mut tally = Tally::default();
    for a in bases(c.zsig_a) {
        for i in 1..=c.zsig_i {
            let prim = primitive_divisors(&big(a), i).map_err(err)?;
            if prim.is_empty() {
                found.insert((a, i));
            }
            // Each reported divisor must have order exactly i.
            for r in prim.iter() {
                let e = mult_order(r, &big(a)).map_err(err)?;
                tally.record(e == BigInt::from(i), || json!({ "a": a, "i": i, "r": r.to_string() }));
            }
        }
    }
    let expected: BTreeSet<(i64, u64)> = ZSIGMONDY_EXCEPTIONS
        .iter()
        .copied()
        .filter(|&(a, i)| a.abs() <= c.zsig_a && i <= c.zsig_i)
        .collect();
    let ok = tally.ok() && found == expected;
    Ok(Outcome::check(
        ok,
        tally.evidence(json!({
            "found": found.iter().map(|(a, i)| [*a, *i as i64]).collect::<Vec<_>>(),
            "expected": expected.iter().map(|(a, i)| [*a, *i as i64]).collect::<Vec<_>>(),
        })),
    ))
}

fn primes_upto(n: u64) -> impl Iterator<Item = u64> {
    (2..=n).filter(|&p| is_prime_u64(p))
}

fn register_cyclotomic(claims: &mut Vec<Claim>) {
    claims.push(Claim::new(
        "L2.1.divides",
        "cyclotomic identities, part (1)",
        "Φ_{pm}(x)=Φ_m(x^p), if (m,p)=p",
        "Φ_{pm} = Φ_m(x^p) when p divides m",
        |c| {
            let mut t = Tally::default();
            for p in primes_upto(c.cyclo_p) {
                for m in (p..=c.cyclo_m).step_by(p as usize) {
                    let lhs = cyclotomic(p * m);
                    let rhs = cyclotomic(m).poly().compose_pow(p as usize);
                    t.record(lhs.poly() == &rhs, || json!({ "p": p, "m": m }));
                }
            }
            Ok(t.outcome(json!({ "p_max": c.cyclo_p, "m_max": c.cyclo_m })))
        },
    ));
    claims.push(Claim::new(
        "L2.1.coprime",
        "cyclotomic identities, part (1)",
        "Φ_{pm}(x)=Φ_m(x^p)/Φ_n(x), if (m,p)=1",
        "Φ_{pm} · Φ_m = Φ_m(x^p) when p does not divide m",
        |c| {
            let mut t = Tally::default();
            for p in primes_upto(c.cyclo_p) {
                for m in (1..=c.cyclo_m).filter(|m| m % p != 0) {
                    let phi_m = cyclotomic(m);
                    let lhs = cyclotomic(p * m).poly() * phi_m.poly();
                    t.record(lhs == phi_m.poly().compose_pow(p as usize), || json!({ "p": p, "m": m }));
                }
            }
            Ok(t.outcome(json!({ "p_max": c.cyclo_p, "m_max": c.cyclo_m })))
        },
    ));
    claims.push(Claim::new(
        "L2.2",
        "cyclotomic identities, part (2)",
        "Φ_{2m}(x)=Φ_m(-x)",
        "Φ_{2m}(x) = Φ_m(−x) for odd m > 1",
        |c| {
            let mut t = Tally::default();
            for m in (3..=c.cyclo_index).step_by(2) {
                t.record(cyclotomic(2 * m).poly() == &cyclotomic(m).poly().negate_arg(), || json!({ "m": m }));
            }
            Ok(t.outcome(json!({ "m_max": c.cyclo_index })))
        },
    ));
    claims.push(Claim::new(
        "L2.3",
        "cyclotomic identities, part (3)",
        "Φ_p(x)=(x^p-1)/(x-1) and Φ_{2^k}(x)=x^{2^{k-1}}+1",
        "prime and 2-power cyclotomic polynomials",
        |c| {
            let mut t = Tally::default();
            let x_minus_1 = Poly::x_pow_minus_one(1);
            for p in primes_upto(c.cyclo_index) {
                let lhs = cyclotomic(p).poly() * &x_minus_1;
                t.record(lhs == Poly::x_pow_minus_one(p as usize), || json!({ "p": p }));
            }
            for k in 1..=10u32 {
                let half = 1usize << (k - 1);
                let mut coeffs = vec![BigInt::from(0); half + 1];
                coeffs[0] = BigInt::one();
                coeffs[half] = BigInt::one();
                t.record(cyclotomic(1 << k).poly() == &Poly::new(coeffs), || json!({ "k": k }));
            }
            Ok(t.outcome(json!({ "p_max": c.cyclo_index, "k_max": 10 })))
        },
    ));
    claims.push(Claim::new(
        "L2.prod",
        "Möbius product formula for Φ_m",
        "Φ_m(x)=∏_{d|m}(x^d-1)^{μ(m/d)}",
        "∏_{d|m} Φ_d = x^m − 1",
        |c| {
            let mut t = Tally::default();
            for m in 1..=c.cyclo_index {
                let prod = crate::cyclo::divisors(m)
                    .into_iter()
                    .fold(Poly::one(), |acc, d| &acc * cyclotomic(d).poly());
                t.record(prod == Poly::x_pow_minus_one(m as usize), || json!({ "m": m }));
            }
            Ok(t.outcome(json!({ "m_max": c.cyclo_index })))
        },
    ));
}

fn register_lte(claims: &mut Vec<Claim>) {
    let parts = [
        (1, LteClause::OddBase, "((εa)^m-1)_{r}=m_{r}(εa-1)_{r}", "odd r | εa − 1"),
        (2, LteClause::OddPower, "r divides (εa)^{m_{r'}}-1", "odd r | (εa)^m − 1"),
        (3, LteClause::TwoAdic, "((εa)^m-1)_{2}=m_{2}(εa-1)_{2}", "4 | εa − 1"),
    ];
    for (n, clause, quote, hyp) in parts {
        claims.push(Claim::new(
            format!("L4.{n}"),
            format!("r-part lemma, part ({n})"),
            quote,
            format!("lifting the exponent when {hyp}"),
            move |c| {
                let mut t = Tally::default();
                for a in 2..=c.lte_a {
                    for m in 2..=c.lte_m {
                        for r in primes_upto(c.lte_r) {
                            for eps in SignChoice::BOTH {
                                let out = verify_lte(&big(a), m, &BigInt::from(r), eps).map_err(err)?;
                                if let LteOutcome::Checked(cl) = out {
                                    for (which, ok) in cl {
                                        if which == clause {
                                            t.record(ok, || json!({ "a": a, "m": m, "r": r, "eps": eps.to_string() }));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                if t.checked == 0 {
                    return Ok(Outcome::new(Status::NotApplicable, t.evidence(json!({}))));
                }
                Ok(t.outcome(json!({ "a_max": c.lte_a, "m_max": c.lte_m, "r_max": c.lte_r })))
            },
        ));
    }
}

/// The Rᵢ(a)-part of aⁱ − 1, from a full factorization and orders computed
/// from scratch.
fn primitive_part_by_factoring(a: i64, i: u64) -> Result<BigInt, String> {
    let n: BigInt = num_traits::pow(big(a), i as usize) - 1;
    let f = factorize(&n).map_err(err)?;
    let mut part = BigInt::one();
    for (r, &v) in f.factors() {
        if mult_order(r, &big(a)).map_err(err)? == BigInt::from(i) {
            part *= num_traits::pow(r.clone(), v as usize);
        }
    }
    Ok(part)
}

fn register_star(claims: &mut Vec<Claim>, config: &VerifyConfig) {
    for i in (1..=config.star_i).filter(|&i| i != 2) {
        claims.push(Claim::new(
            format!("STAR.oracle.{i}"),
            "closed formula for the greatest primitive divisor",
            "k_i(a)=|Φ_i(a)|/(r,Φ_{i_{r'}}(a))",
            format!("k_{i}(a) equals the R_{i}(a)-part of a^{i} − 1"),
            move |c| {
                let mut t = Tally::default();
                for a in bases(c.star_a) {
                    let k = greatest_primitive_divisor(&big(a), i).map_err(err)?;
                    let oracle = primitive_part_by_factoring(a, i)?;
                    t.record(k == oracle, || {
                        json!({ "a": a, "k": k.to_string(), "oracle": oracle.to_string() })
                    });
                }
                Ok(t.outcome(json!({ "i": i, "a_max": c.star_a })))
            },
        ));
    }
    claims.push(Claim::new(
        "STAR.k1",
        "greatest primitive divisor, index 1",
        "k_1(a)=|a-1|/2 if a≡3 (mod 4), and k_1(a)=|a-1| otherwise",
        "k₁(a) = k₂(−a) by residue of a mod 4",
        |c| {
            let mut t = Tally::default();
            for a in bases(c.star_a) {
                let k1 = greatest_primitive_divisor(&big(a), 1).map_err(err)?;
                let k2 = greatest_primitive_divisor(&big(-a), 2).map_err(err)?;
                let expect = if a.rem_euclid(4) == 3 { (a - 1).abs() / 2 } else { (a - 1).abs() };
                t.record(k1 == big(expect) && k2 == k1, || json!({ "a": a, "k1": k1.to_string() }));
            }
            Ok(t.outcome(json!({ "a_max": c.star_a })))
        },
    ));
    claims.push(Claim::new(
        "STAR.odd",
        "greatest primitive divisor, sign change",
        "k_i(a)=k_{2i}(-a)",
        "kᵢ(a) = k₂ᵢ(−a) for odd i",
        |c| {
            let mut t = Tally::default();
            for a in bases(c.star_a) {
                for i in (1..=c.star_i / 2).step_by(2) {
                    let lhs = greatest_primitive_divisor(&big(a), i).map_err(err)?;
                    let rhs = greatest_primitive_divisor(&big(-a), 2 * i).map_err(err)?;
                    t.record(lhs == rhs, || json!({ "a": a, "i": i }));
                }
            }
            Ok(t.outcome(json!({ "a_max": c.star_a, "i_max": c.star_i / 2 })))
        },
    ));
    claims.push(Claim::new(
        "STAR.coprime",
        "greatest primitive divisor, coprimality",
        "the numbers k_i(a) are pairwise coprime for different i",
        "kᵢ(a) and kⱼ(a) are coprime for i ≠ j",
        |c| {
            let mut t = Tally::default();
            for a in bases(c.star_a) {
                let ks = (1..=c.star_i)
                    .map(|i| greatest_primitive_divisor(&big(a), i))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(err)?;
                for i in 0..ks.len() {
                    for j in i + 1..ks.len() {
                        t.record(ks[i].gcd(&ks[j]).is_one(), || json!({ "a": a, "i": i + 1, "j": j + 1 }));
                    }
                }
            }
            Ok(t.outcome(json!({ "a_max": c.star_a, "i_max": c.star_i })))
        },
    ));
    claims.push(Claim::new(
        "STAR.gcd",
        "closed formula for the greatest primitive divisor, remark",
        "if i_{r'} does not divide r-1 then (r,Φ_{i_{r'}}(a))=1",
        "the correcting gcd is trivial unless i_{r'} divides r − 1",
        |c| {
            let mut t = Tally::default();
            let mut exercised = 0u64;
            for i in 3..=c.star_i {
                let r = *prime_divisors(i).last().expect("i > 1");
                let mut rest = i;
                while rest % r == 0 {
                    rest /= r;
                }
                if (r - 1) % rest == 0 {
                    continue;
                }
                for a in bases(c.star_a) {
                    exercised += 1;
                    let g = eval_cyclotomic(rest, &big(a)).gcd(&BigInt::from(r));
                    t.record(g.is_one(), || json!({ "a": a, "i": i, "r": r }));
                }
            }
            Ok(t.outcome(json!({ "cases": exercised })))
        },
    ));
}

fn register_estimates(claims: &mut Vec<Claim>) {
    for item in ESTIMATE_ITEMS {
        let n = item.item;
        let quote = match n {
            1 => "k_1(n)k_2(n)=(n^2-1)/(2,n-1)",
            2 => "k_3(n)k_6(n)=(n^4+n^2+1)/(3,n^2-1)",
            3 => "k_4(n)=(n^2+1)/(2,n-1)",
            4 => "k_5(n)k_{10}(n)=(n^8+n^6+n^4+n^2+1)/(5,n^2-1)",
            5 => "k_7(n)=(n^6+n^5+n^4+n^3+n^2+n+1)/(7,n-1), k_{14}(n)=(n^6-n^5+n^4-n^3+n^2-n+1)/(7,n+1)",
            6 => "k_8(n)=(n^4+1)/(n-1,2)",
            7 => "k_9(n)=(n^6+n^3+1)/(3,n-1), k_{18}(n)=(n^6-n^3+1)/(3,n+1)",
            8 => "k_{12}(n)=n^4-n^2+1",
            9 => "k_{15}(n)=n^8+n^7-n^5-n^4-n^3+n+1, k_{30}(n)=n^8-n^7+n^5-n^4+n^3-n+1",
            10 => "k_{20}(n)=(n^8-n^6+n^4-n^2+1)/(5,n^2+1)",
            _ => "k_{24}(n)=n^8-n^4+1",
        };
        let indices = item.indices.iter().map(|i| format!("k_{i}")).collect::<Vec<_>>().join("·");
        claims.push(Claim::new(
            format!("L10.{n}"),
            format!("estimates of kᵢ(n), item ({n})"),
            quote,
            format!("closed forms for {indices}"),
            move |c| {
                let mut printed = Tally::default();
                let mut swapped = Tally::default();
                for x in 2..=c.estimate_n {
                    let chk = estimate_check(n, &BigInt::from(x)).map_err(err)?;
                    let case = || {
                        json!({
                            "n": x,
                            "values": chk.values.iter().map(|(i, v)| (i.to_string(), v.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
                            "closed_forms": chk.closed_forms.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        })
                    };
                    printed.record(chk.exact_holds, case);
                    if let Some(s) = chk.swapped_holds {
                        swapped.record(s, || json!({ "n": x }));
                    }
                }
                let extra = json!({ "n_max": c.estimate_n });
                if printed.ok() {
                    return Ok(Outcome::new(Status::Pass, printed.evidence(extra)));
                }
                match item.swap {
                    Some((a, b)) if swapped.ok() && swapped.checked > 0 => Ok(Outcome::new(
                        Status::Warn,
                        printed.evidence(json!({
                            "n_max": c.estimate_n,
                            "as_printed": "fails",
                            "with_indices_swapped": [a, b],
                            "swapped_checked": swapped.checked,
                            "swapped_failed": 0,
                        })),
                    )),
                    _ => Ok(Outcome::new(Status::Fail, printed.evidence(extra))),
                }
            },
        ));
        let (ln, ld) = item.lower;
        let (un, ud) = item.upper;
        let e = item.exponent;
        claims.push(Claim::new(
            format!("L10.prod.{n}"),
            format!("estimates of kᵢ(n), item ({n})"),
            format!("({ln}/{ld})n^{{{e}}} ≤ {} ≤ ({un}/{ud})n^{{{e}}}", indices.replace('·', "")),
            format!("two-sided bound on {indices}"),
            move |c| {
                let mut t = Tally::default();
                for x in 2..=c.estimate_n {
                    let chk = estimate_check(n, &BigInt::from(x)).map_err(err)?;
                    t.record(chk.lower_holds && chk.upper_holds, || {
                        json!({ "n": x, "product": chk.product.to_string(), "lower": chk.lower_holds, "upper": chk.upper_holds })
                    });
                }
                Ok(t.outcome(json!({ "n_max": c.estimate_n, "exponent": e, "lower": [ln, ld], "upper": [un, ud] })))
            },
        ));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: &str) -> super::super::ClaimRecord {
        let mut claims = Vec::new();
        register(&mut claims, &VerifyConfig::default());
        let c = claims.into_iter().find(|c| c.id == id).unwrap();
        c.execute(&VerifyConfig::default())
    }

    #[test]
    fn factoring_oracle_on_named_values() {
        // 2¹⁰ − 1 = 3 · 11 · 31; only 11 has order 10.
        assert_eq!(primitive_part_by_factoring(2, 10).unwrap(), big(11));
        // 5⁴ − 1 = 2⁴ · 3 · 13; R₄(5) = {13}.
        assert_eq!(primitive_part_by_factoring(5, 4).unwrap(), big(13));
    }

    #[test]
    fn swapped_item_warns_and_others_pass() {
        let r = run("L10.9");
        assert_eq!(r.status, Status::Warn, "{}", r.evidence);
        assert_eq!(r.evidence["failures"][0]["n"], 2);
        assert_eq!(run("L10.prod.9").status, Status::Pass);
        assert_eq!(run("L10.8").status, Status::Pass);
    }

    #[test]
    fn small_claims_pass() {
        for id in ["L1.sweep", "L2.2", "L2.3", "L4.1", "L4.2", "L4.3", "STAR.k1", "STAR.gcd"] {
            let r = run(id);
            assert_eq!(r.status, Status::Pass, "{id}: {}", r.evidence);
        }
    }
}
