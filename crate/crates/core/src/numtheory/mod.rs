// SPDX-License-Identifier: Apache-2.0

//! Exact integer number theory: primality, factorization, π-parts and
//! multiplicative orders.
//!
//! Everything here works on [`BigInt`]; there is no floating point.

mod factor;
mod prime;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use factor::{factorize, factorize_with, FactorConfig, Factorization};
pub use prime::{is_prime, is_prime_biguint, is_prime_u64, small_primes};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NumError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("factorization of {value} incomplete: cofactor {unfactored} resisted the effort cap")]
    Incomplete { value: BigInt, unfactored: BigInt },
}

/// The sign ε in ε·a, written `+` or `-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SignChoice {
    Plus,
    Minus,
}

impl SignChoice {
    pub const BOTH: [SignChoice; 2] = [SignChoice::Plus, SignChoice::Minus];

    pub fn apply(self, a: &BigInt) -> BigInt {
        match self {
            SignChoice::Plus => a.clone(),
            SignChoice::Minus => -a,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            SignChoice::Plus => 1,
            SignChoice::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            SignChoice::Plus => SignChoice::Minus,
            SignChoice::Minus => SignChoice::Plus,
        }
    }

    /// The ε with q ≡ −ε (mod 4); only defined for odd q.
    pub fn canonical_for(q: &BigInt) -> Option<Self> {
        let r = q.mod_floor(&BigInt::from(4));
        if r == BigInt::from(1) {
            Some(SignChoice::Minus)
        } else if r == BigInt::from(3) {
            Some(SignChoice::Plus)
        } else {
            None
        }
    }
}

impl fmt::Display for SignChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignChoice::Plus => "+",
            SignChoice::Minus => "-",
        })
    }
}

impl std::str::FromStr for SignChoice {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" | "+1" | "1" => Ok(SignChoice::Plus),
            "-" | "minus" | "-1" => Ok(SignChoice::Minus),
            other => Err(NumError::Domain(format!("not a sign: {other:?}"))),
        }
    }
}

/// A finite set of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrimeSet(BTreeSet<BigInt>);

impl PrimeSet {
    pub fn new<I: IntoIterator<Item = BigInt>>(primes: I) -> Result<Self, NumError> {
        let set: BTreeSet<BigInt> = primes.into_iter().collect();
        if let Some(bad) = set.iter().find(|p| !is_prime(p)) {
            return Err(NumError::Domain(format!("{bad} is not prime")));
        }
        Ok(Self(set))
    }

    pub fn from_small(primes: &[u64]) -> Result<Self, NumError> {
        Self::new(primes.iter().map(|&p| BigInt::from(p)))
    }

    pub(crate) fn from_trusted<I: IntoIterator<Item = BigInt>>(primes: I) -> Self {
        Self(primes.into_iter().collect())
    }

    pub fn contains(&self, p: &BigInt) -> bool {
        self.0.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        Self(self.0.union(&other.0).cloned().collect())
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Exponent of `p` in `n` (`n` nonzero, `p > 1`).
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero() && p > &BigInt::one());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// n_π, the largest divisor of `n` whose prime divisors all lie in `pi`.
pub fn pi_part(n: &BigInt, pi: &PrimeSet) -> Result<BigInt, NumError> {
    if n.is_zero() {
        return Err(NumError::Domain("π-part of 0 is undefined".into()));
    }
    Ok(pi
        .iter()
        .map(|p| num_traits::pow(p.clone(), valuation(n, p) as usize))
        .fold(BigInt::one(), |acc, x| acc * x))
}

/// n_π' = |n| / n_π.
pub fn pi_copart(n: &BigInt, pi: &PrimeSet) -> Result<BigInt, NumError> {
    Ok(n.abs() / pi_part(n, pi)?)
}

/// e(r, a): the multiplicative order of `a` modulo an odd prime `r`, or the
/// mod-4 convention when `r = 2`.
pub fn mult_order(r: &BigInt, a: &BigInt) -> Result<BigInt, NumError> {
    if !is_prime(r) {
        return Err(NumError::Domain(format!("{r} is not prime")));
    }
    if r == &BigInt::from(2) {
        if a.is_even() {
            return Err(NumError::Domain(format!("e(2, a) needs odd a, got {a}")));
        }
        let residue = a.mod_floor(&BigInt::from(4));
        return Ok(BigInt::from(if residue.is_one() { 1 } else { 2 }));
    }
    let a = a.mod_floor(r);
    if a.is_zero() {
        return Err(NumError::Domain(format!("{r} divides the base")));
    }
    let group_order: BigInt = r - 1;
    let mut order = group_order.clone();
    for p in factorize(&group_order)?.factors().keys() {
        while (&order % p).is_zero() && a.modpow(&(&order / p), r).is_one() {
            order /= p;
        }
    }
    Ok(order)
}

/// e(r, a) for an odd prime `r` already known to divide aⁿ − 1; descends from
/// the divisors of `n` instead of factoring r − 1.
pub(crate) fn order_dividing(r: &BigInt, a: &BigInt, n: u64) -> u64 {
    let a = a.mod_floor(r);
    let mut order = n;
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            while order % p == 0 && a.modpow(&BigInt::from(order / p), r).is_one() {
                order /= p;
            }
        }
        p += 1;
    }
    order
}

/// Which part of the r-part lifting lemma was exercised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LteClause {
    /// odd r | εa − 1 ⇒ ((εa)^m − 1)_r = m_r (εa − 1)_r
    OddBase,
    /// odd r | (εa)^m − 1 ⇒ r | (εa)^{m_{r'}} − 1
    OddPower,
    /// 4 | εa − 1 ⇒ ((εa)^m − 1)_2 = m_2 (εa − 1)_2
    TwoAdic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LteOutcome {
    NotApplicable,
    Checked(Vec<(LteClause, bool)>),
}

impl LteOutcome {
    /// `None` when no clause applies.
    pub fn holds(&self) -> Option<bool> {
        match self {
            LteOutcome::NotApplicable => None,
            LteOutcome::Checked(c) => Some(c.iter().all(|(_, ok)| *ok)),
        }
    }
}

/// Checks every clause of the r-part lemma whose hypothesis holds for
/// (a, m, r, ε), by evaluating both sides exactly.
pub fn verify_lte(a: &BigInt, m: u32, r: &BigInt, eps: SignChoice) -> Result<LteOutcome, NumError> {
    if a.abs() <= BigInt::one() {
        return Err(NumError::Domain(format!("need |a| > 1, got {a}")));
    }
    if m <= 1 {
        return Err(NumError::Domain(format!("need m > 1, got {m}")));
    }
    if !is_prime(r) {
        return Err(NumError::Domain(format!("{r} is not prime")));
    }
    let base = eps.apply(a);
    let base_minus_1: BigInt = &base - 1;
    let power_minus_1: BigInt = num_traits::pow(base.clone(), m as usize) - 1;
    let m_big = BigInt::from(m);
    let two = BigInt::from(2);
    let mut checked = Vec::new();

    if r == &two {
        if (&base_minus_1 % BigInt::from(4)).is_zero() {
            let lhs = valuation(&power_minus_1, r);
            let rhs = valuation(&m_big, r) + valuation(&base_minus_1, r);
            checked.push((LteClause::TwoAdic, lhs == rhs));
        }
    } else {
        if (&base_minus_1 % r).is_zero() {
            let lhs = valuation(&power_minus_1, r);
            let rhs = valuation(&m_big, r) + valuation(&base_minus_1, r);
            checked.push((LteClause::OddBase, lhs == rhs));
        }
        if (&power_minus_1 % r).is_zero() {
            let m_coprime = &m_big / num_traits::pow(r.clone(), valuation(&m_big, r) as usize);
            let exp = usize::try_from(m_coprime).expect("fits");
            let reduced: BigInt = num_traits::pow(base.clone(), exp) - 1;
            checked.push((LteClause::OddPower, (reduced % r).is_zero()));
        }
    }

    Ok(if checked.is_empty() {
        LteOutcome::NotApplicable
    } else {
        LteOutcome::Checked(checked)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn brute_order(r: i64, a: i64) -> i64 {
        let a = a.rem_euclid(r);
        let mut x = a;
        let mut i = 1;
        while x != 1 {
            x = x * a % r;
            i += 1;
        }
        i
    }

    #[test]
    fn pi_parts() {
        let two = PrimeSet::from_small(&[2]).unwrap();
        let three_five = PrimeSet::from_small(&[3, 5]).unwrap();
        let two_three = PrimeSet::from_small(&[2, 3]).unwrap();
        assert_eq!(pi_part(&b(24), &two).unwrap(), b(8));
        assert_eq!(pi_part(&b(24), &three_five).unwrap(), b(3));
        // 78126 = 2 * 3 * 29 * 449
        assert_eq!(pi_part(&b(78126), &two_three).unwrap(), b(6));
        assert_eq!(pi_copart(&b(-78126), &two_three).unwrap(), b(13021));
        assert!(pi_part(&b(0), &two).is_err());
    }

    #[test]
    fn prime_set_rejects_composites() {
        assert!(PrimeSet::from_small(&[2, 9]).is_err());
    }

    #[test]
    fn named_orders() {
        let e = |r: i64, a: i64| mult_order(&b(r), &b(a)).unwrap();
        assert_eq!(e(41, 5), b(20));
        assert_eq!(e(31, 7), b(15));
        assert_eq!(e(2, 7), b(2));
        assert_eq!(e(2, 5), b(1));
        assert_eq!(e(2, -5), b(2));
        assert_eq!(e(19, 5), b(9));
    }

    #[test]
    fn order_domain_errors() {
        assert!(mult_order(&b(5), &b(10)).is_err());
        assert!(mult_order(&b(2), &b(6)).is_err());
        assert!(mult_order(&b(9), &b(2)).is_err());
    }

    #[test]
    fn order_dividing_matches_brute_force() {
        for r in [3i64, 5, 7, 11, 13, 127, 331] {
            for a in 2..40 {
                if a % r == 0 {
                    continue;
                }
                let e = brute_order(r, a);
                let n = (r - 1) as u64;
                assert_eq!(order_dividing(&b(r), &b(a), n), e as u64);
            }
        }
    }

    #[test]
    fn lte_named_cases() {
        let out = verify_lte(&b(4), 6, &b(3), SignChoice::Plus).unwrap();
        assert_eq!(out.holds(), Some(true));
        let out = verify_lte(&b(5), 4, &b(2), SignChoice::Plus).unwrap();
        assert_eq!(out, LteOutcome::Checked(vec![(LteClause::TwoAdic, true)]));
        // 3 ≡ 3 mod 4 with ε = +: the 2-adic clause does not apply.
        let out = verify_lte(&b(3), 4, &b(2), SignChoice::Plus).unwrap();
        assert_eq!(out, LteOutcome::NotApplicable);
        assert!(verify_lte(&b(1), 4, &b(2), SignChoice::Plus).is_err());
    }

    #[test]
    fn lte_sweep() {
        let primes = [2i64, 3, 5, 7, 11, 13];
        for a in (-20i64..=20).filter(|a| a.abs() > 1) {
            for m in 2..=20u32 {
                for &r in &primes {
                    for eps in SignChoice::BOTH {
                        let out = verify_lte(&b(a), m, &b(r), eps).unwrap();
                        assert_ne!(out.holds(), Some(false), "a={a} m={m} r={r} eps={eps}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn factorization_reassembles(n in 1i64..5_000_000_000_000, neg in any::<bool>()) {
            let n = if neg { -n } else { n };
            let f = factorize(&b(n)).unwrap();
            prop_assert_eq!(f.reassemble(), b(n.abs()));
            for p in f.factors().keys() {
                prop_assert!(is_prime(p));
            }
        }

        #[test]
        fn order_divides_r_minus_1(idx in 1usize..2000, a in 2i64..1_000_000) {
            let r = small_primes()[idx] as i64;
            prop_assume!(a % r != 0);
            let e = mult_order(&b(r), &b(a)).unwrap();
            prop_assert!((b(r - 1) % &e).is_zero());
            prop_assert!(b(a).modpow(&e, &b(r)).is_one());
        }

        #[test]
        fn pi_part_and_copart_are_complementary(n in 1i64..10_000_000, mask in 0u8..64) {
            let candidates = [2u64, 3, 5, 7, 11, 13];
            let chosen: Vec<u64> = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| *p)
                .collect();
            let pi = PrimeSet::from_small(&chosen).unwrap();
            let part = pi_part(&b(n), &pi).unwrap();
            let copart = pi_copart(&b(n), &pi).unwrap();
            prop_assert_eq!(&part * &copart, b(n));
            prop_assert!(part.gcd(&copart).is_one());
        }
    }
}
