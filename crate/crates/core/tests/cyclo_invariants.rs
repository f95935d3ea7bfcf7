// SPDX-License-Identifier: Apache-2.0

use lieprime_core::cyclo::{
    cyclotomic, greatest_primitive_divisor, primitive_divisors, zsigmondy_exceptional, Poly,
};
use lieprime_core::numtheory::{is_prime, pi_part};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

fn bases() -> impl Iterator<Item = i64> {
    (-20i64..=20).filter(|a| a.abs() > 1)
}

#[test]
fn doubled_index_is_negated_argument() {
    for m in (3..=199u64).step_by(2) {
        assert_eq!(
            *cyclotomic(2 * m).poly(),
            cyclotomic(m).poly().negate_arg(),
            "m = {m}"
        );
    }
}

#[test]
fn prime_multiple_identities() {
    for p in (2..=50u64).filter(|&p| is_prime(&BigInt::from(p))) {
        for m in 1..=50u64 {
            let lifted = cyclotomic(m).poly().compose_pow(p as usize);
            let big = cyclotomic(p * m);
            if m % p == 0 {
                assert_eq!(*big.poly(), lifted, "p={p} m={m}");
            } else {
                let prod: Poly = big.poly() * cyclotomic(m).poly();
                assert_eq!(prod, lifted, "p={p} m={m}");
            }
        }
    }
}

#[test]
fn k_is_the_primitive_part() {
    for a in bases() {
        for i in (1..=18u64).filter(|&i| i != 2) {
            let base = BigInt::from(a);
            let value: BigInt = base.clone().pow(i as u32) - 1u32;
            let r = primitive_divisors(&base, i).unwrap();
            assert_eq!(
                greatest_primitive_divisor(&base, i).unwrap(),
                pi_part(&value, &r).unwrap(),
                "a={a} i={i}"
            );
        }
    }
}

#[test]
fn odd_index_matches_doubled_index_at_negated_base() {
    for a in bases() {
        for i in (1..=17u64).step_by(2) {
            assert_eq!(
                greatest_primitive_divisor(&BigInt::from(a), i).unwrap(),
                greatest_primitive_divisor(&BigInt::from(-a), 2 * i).unwrap(),
                "a={a} i={i}"
            );
        }
    }
}

#[test]
fn distinct_indices_are_coprime() {
    for a in bases() {
        let base = BigInt::from(a);
        let ks: Vec<BigInt> = (1..=18)
            .map(|i| greatest_primitive_divisor(&base, i).unwrap())
            .collect();
        for i in 0..ks.len() {
            for j in i + 1..ks.len() {
                assert!(ks[i].gcd(&ks[j]).is_one(), "a={a} i={} j={}", i + 1, j + 1);
            }
        }
    }
}

#[test]
fn exceptions_are_exactly_the_empty_sets() {
    for a in bases() {
        for i in 1..=14u64 {
            let base = BigInt::from(a);
            assert_eq!(
                zsigmondy_exceptional(&base, i),
                primitive_divisors(&base, i).unwrap().is_empty(),
                "a={a} i={i}"
            );
        }
    }
}
