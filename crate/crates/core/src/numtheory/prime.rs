// SPDX-License-Identifier: Apache-2.0

//! Primality testing.
//!
//! Below 2^64 the strong-pseudoprime test on the first twelve prime bases is
//! deterministic. Up to 3 317 044 064 679 887 385 961 981 the first thirteen
//! prime bases are deterministic (Sorenson and Webster). Past that bound the
//! test is Baillie-PSW, which has no known counterexample but is not a proof.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Largest strong pseudoprime to the first thirteen prime bases, plus one.
const PSI_13: &str = "3317044064679887385961981";

const SIEVE_LIMIT: u32 = 1 << 16;

fn psi13() -> &'static BigUint {
    static CELL: OnceLock<BigUint> = OnceLock::new();
    CELL.get_or_init(|| PSI_13.parse().expect("constant parses"))
}

/// All primes below 2^16, ascending.
pub fn small_primes() -> &'static [u32] {
    static CELL: OnceLock<Vec<u32>> = OnceLock::new();
    CELL.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::new();
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, base: u64) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for machine words.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    BASES[..12].iter().all(|&b| strong_probable_prime_u64(n, b))
}

fn strong_probable_prime_big(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a / n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3u8);
    let five = BigInt::from(5u8);
    let eight = BigInt::from(8u8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&BigInt::from(4u8)) == three && n.mod_floor(&BigInt::from(4u8)) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = if x.is_odd() { x + n } else { x };
    (x >> 1u32).mod_floor(n)
}

/// Strong Lucas probable-prime test with Selfridge's parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let sqrt = n.sqrt();
    if &sqrt * &sqrt == *n {
        return false;
    }
    let n = BigInt::from_biguint(Sign::Plus, n.clone());
    let mut d_abs = 5i64;
    let d = loop {
        let d = if (d_abs / 2) % 2 == 0 { d_abs } else { -d_abs };
        let d_big = BigInt::from(d);
        match jacobi(&d_big, &n) {
            -1 => break d_big,
            0 if d_big.magnitude() != n.magnitude() => return false,
            _ => {}
        }
        d_abs += 2;
    };
    let q: BigInt = (BigInt::one() - &d) / 4;
    let n_plus_1: BigInt = &n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let odd = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = q.mod_floor(&n);
    let bits = odd.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(&n);
        v = (&v * &v - &qk * 2u32).mod_floor(&n);
        qk = (&qk * &qk).mod_floor(&n);
        if odd.bit(i) {
            let next_u = half_mod(&u + &v, &n);
            let next_v = half_mod(&d * &u + &v, &n);
            u = next_u;
            v = next_v;
            qk = (&qk * &q).mod_floor(&n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(&n);
        qk = (&qk * &qk).mod_floor(&n);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality of a non-negative integer; 0 and 1 are not prime.
pub fn is_prime_biguint(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &small_primes()[..200] {
        if (n % p).is_zero() {
            return false;
        }
    }
    if n < psi13() {
        return BASES
            .iter()
            .all(|&b| strong_probable_prime_big(n, &BigUint::from(b)));
    }
    strong_probable_prime_big(n, &BigUint::from(2u8)) && strong_lucas(n)
}

/// Primality of an integer; negative numbers, 0 and 1 are not prime.
pub fn is_prime(n: &BigInt) -> bool {
    match n.sign() {
        Sign::Plus => is_prime_biguint(n.magnitude()),
        _ => false,
    }
}
