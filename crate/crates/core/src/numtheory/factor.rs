// SPDX-License-Identifier: Apache-2.0

//! Complete factorization: trial division, perfect-power detection and
//! Brent's variant of Pollard rho with a bounded step budget.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::{is_prime_biguint, is_prime_u64, mul_mod, small_primes};
use super::{NumError, PrimeSet};

/// Effort limits for [`factorize_with`].
#[derive(Clone, Copy, Debug)]
pub struct FactorConfig {
    /// Trial division runs over primes up to this bound (capped at 2^16).
    pub trial_bound: u32,
    /// Total number of rho iterations allowed across the whole factorization.
    pub max_rho_steps: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        Self {
            trial_bound: 1 << 16,
            max_rho_steps: 200_000_000,
        }
    }
}

/// A complete prime factorization of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    value: BigInt,
    factors: BTreeMap<BigInt, u32>,
}

impl Factorization {
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    /// Prime to exponent, ascending by prime.
    pub fn factors(&self) -> &BTreeMap<BigInt, u32> {
        &self.factors
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    /// π(n): the set of prime divisors.
    pub fn primes(&self) -> PrimeSet {
        PrimeSet::from_trusted(self.factors.keys().cloned())
    }

    /// Multiplies the factors back together; equals `|value|`.
    pub fn reassemble(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, &e)| acc * num_traits::pow(p.clone(), e as usize))
    }

    /// Divisors of `|value|` in ascending order.
    pub fn divisors(&self) -> Vec<BigInt> {
        let mut divs = vec![BigInt::one()];
        for (p, &e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for d in &divs {
                let mut x = d.clone();
                next.push(x.clone());
                for _ in 0..e {
                    x *= p;
                    next.push(x.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes `n` with the default effort limits.
pub fn factorize(n: &BigInt) -> Result<Factorization, NumError> {
    factorize_with(n, &FactorConfig::default())
}

pub fn factorize_with(n: &BigInt, config: &FactorConfig) -> Result<Factorization, NumError> {
    if n.is_zero() {
        return Err(NumError::Domain("cannot factorize 0".into()));
    }
    let mut rest = n.magnitude().clone();
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();

    let bound = config.trial_bound.min(1 << 16);
    for &p in small_primes() {
        if p > bound || BigUint::from(p) * p > rest {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            *found.entry(BigUint::from(p)).or_default() += 1;
        }
    }

    let mut budget = config.max_rho_steps;
    let mut pending = vec![(rest, 1u32)];
    while let Some((c, mult)) = pending.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime_biguint(&c) {
            *found.entry(c).or_default() += mult;
            continue;
        }
        if let Some((root, k)) = perfect_power(&c) {
            pending.push((root, mult * k));
            continue;
        }
        match split(&c, &mut budget) {
            Some(d) => {
                let other = &c / &d;
                pending.push((d, mult));
                pending.push((other, mult));
            }
            None => {
                return Err(NumError::Incomplete {
                    value: n.clone(),
                    unfactored: BigInt::from_biguint(Sign::Plus, c),
                });
            }
        }
    }

    Ok(Factorization {
        value: n.clone(),
        factors: found
            .into_iter()
            .map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e))
            .collect(),
    })
}

fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let r = n.nth_root(k);
        if r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Finds a nontrivial divisor of an odd-or-even composite.
fn split(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u8));
    }
    if let Some(small) = n.to_u64() {
        for c in 1..64 {
            match brent_u64(small, c, budget) {
                Some(d) if d != small => return Some(BigUint::from(d)),
                Some(_) => continue,
                None => return None,
            }
        }
        return None;
    }
    for c in 1u32..64 {
        match brent_big(n, &BigUint::from(c), budget) {
            Some(d) if d != *n => return Some(d),
            Some(_) => continue,
            None => return None,
        }
    }
    None
}

const BATCH: u64 = 128;

/// Returns a divisor (possibly `n` itself on cycle failure), or `None` when the
/// budget runs out.
fn brent_u64(n: u64, c: u64, budget: &mut u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut y = 2 % n;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BATCH.min(r - k);
            if *budget < steps {
                return None;
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += steps;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    debug_assert!(g == n || !is_prime_u64(n));
    Some(g)
}

fn brent_big(n: &BigUint, c: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u8);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = BATCH.min(r - k);
            if *budget < steps {
                return None;
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(&y);
                q = (&q * abs_diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += steps;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    Some(g)
}
