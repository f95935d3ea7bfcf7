// SPDX-License-Identifier: Apache-2.0

//! Cyclotomic polynomials and primitive prime divisors.
//!
//! Φ_m is built from the Möbius product ∏_{d|m} (x^d − 1)^{μ(m/d)} by exact
//! polynomial long division. The greatest primitive divisor kᵢ(a) uses the
//! closed formula |Φᵢ(a)| / (r, Φ_{i_{r'}}(a)) with r the largest prime
//! divisor of i; the slow route through factorization lives in the tests.

mod estimates;
mod poly;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::numtheory::{factorize, order_dividing, NumError, PrimeSet};

pub use estimates::{estimate_check, ClosedForm, EstimateCheck, EstimateItem, ESTIMATE_ITEMS};
pub use poly::Poly;

/// Φ_m with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloPolynomial {
    index: u64,
    poly: Poly,
}

impl CycloPolynomial {
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Coefficients, constant term first.
    pub fn coefficients(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn eval(&self, a: &BigInt) -> BigInt {
        self.poly.eval(a)
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime divisors of a machine-word integer, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mobius(n: u64) -> i8 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

fn memo() -> &'static RwLock<HashMap<u64, Arc<CycloPolynomial>>> {
    static CELL: OnceLock<RwLock<HashMap<u64, Arc<CycloPolynomial>>>> = OnceLock::new();
    CELL.get_or_init(Default::default)
}

/// Φ_m. Results are cached process-wide behind a read-write lock.
///
/// # Panics
/// If `m == 0`.
pub fn cyclotomic(m: u64) -> Arc<CycloPolynomial> {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(hit) = memo().read().expect("memo lock").get(&m) {
        return Arc::clone(hit);
    }
    let built = Arc::new(build_cyclotomic(m));
    let mut table = memo().write().expect("memo lock");
    Arc::clone(table.entry(m).or_insert(built))
}

fn build_cyclotomic(m: u64) -> CycloPolynomial {
    let divs = divisors(m);
    let mut numerator = Poly::one();
    for &d in &divs {
        if mobius(m / d) == 1 {
            numerator = &numerator * &Poly::x_pow_minus_one(d as usize);
        }
    }
    for &d in &divs {
        if mobius(m / d) == -1 {
            numerator = numerator
                .div_exact(&Poly::x_pow_minus_one(d as usize))
                .expect("Möbius product divides exactly");
        }
    }
    CycloPolynomial {
        index: m,
        poly: numerator,
    }
}

/// Φ_m(a), exactly.
pub fn eval_cyclotomic(m: u64, a: &BigInt) -> BigInt {
    cyclotomic(m).eval(a)
}

fn check_base(a: &BigInt) -> Result<(), NumError> {
    if a.abs() <= BigInt::one() {
        return Err(NumError::Domain(format!("need |a| > 1, got {a}")));
    }
    Ok(())
}

/// Rᵢ(a): the primes r with e(r, a) = i.
pub fn primitive_divisors(a: &BigInt, i: u64) -> Result<PrimeSet, NumError> {
    check_base(a)?;
    if i == 0 {
        return Err(NumError::Domain("index must be positive".into()));
    }
    // Every r with e(r, a) = i divides Φᵢ(a), including r = 2 for i ≤ 2.
    let value = eval_cyclotomic(i, a);
    let two = BigInt::from(2);
    let primes = factorize(&value)?
        .factors()
        .keys()
        .filter(|r| {
            if *r == &two {
                let e = if a.mod_floor(&BigInt::from(4)).is_one() { 1 } else { 2 };
                a.is_odd() && e == i
            } else {
                order_dividing(r, a, i) == i
            }
        })
        .cloned()
        .collect::<Vec<_>>();
    Ok(PrimeSet::from_trusted(primes))
}

/// The pairs (a, i) with no primitive prime divisor.
pub const ZSIGMONDY_EXCEPTIONS: [(i64, u64); 6] = [(2, 1), (2, 6), (-2, 2), (-2, 3), (3, 1), (-3, 2)];

pub fn zsigmondy_exceptional(a: &BigInt, i: u64) -> bool {
    ZSIGMONDY_EXCEPTIONS
        .iter()
        .any(|&(ea, ei)| ei == i && *a == BigInt::from(ea))
}

/// kᵢ(a), the greatest primitive divisor of aⁱ − 1 (with k₂(a) = k₁(−a)).
pub fn greatest_primitive_divisor(a: &BigInt, i: u64) -> Result<BigInt, NumError> {
    check_base(a)?;
    match i {
        0 => Err(NumError::Domain("index must be positive".into())),
        1 => {
            let d = (a - 1u32).abs();
            if a.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
                Ok(d / 2u32)
            } else {
                Ok(d)
            }
        }
        2 => greatest_primitive_divisor(&-a, 1),
        _ => {
            let r = *prime_divisors(i).last().expect("i > 2 has a prime divisor");
            let mut stripped = i;
            while stripped % r == 0 {
                stripped /= r;
            }
            let correction = eval_cyclotomic(stripped, a).gcd(&BigInt::from(r));
            Ok(eval_cyclotomic(i, a).abs() / correction)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{mult_order, pi_part};
    use num_traits::{ToPrimitive, Zero};

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn coeffs(m: u64) -> Vec<i64> {
        cyclotomic(m)
            .coefficients()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn named_polynomials() {
        assert_eq!(coeffs(1), vec![-1, 1]);
        assert_eq!(coeffs(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(coeffs(9), vec![1, 0, 0, 1, 0, 0, 1]);
        // (x^15 - 1)(x - 1) / ((x^5 - 1)(x^3 - 1))
        assert_eq!(coeffs(15), vec![1, -1, 0, 1, -1, 1, 0, -1, 1]);
    }

    #[test]
    fn evaluation() {
        assert_eq!(eval_cyclotomic(7, &b(2)), b(127));
        assert_eq!(eval_cyclotomic(2, &b(-5)), b(-4));
        assert_eq!(eval_cyclotomic(30, &b(2)), b(331));
    }

    #[test]
    fn degree_and_constant_term() {
        for m in 1..=300u64 {
            let phi = cyclotomic(m);
            assert_eq!(phi.degree() as u64, euler_phi(m), "m = {m}");
            assert!(phi.coefficients().last().unwrap().is_one());
            let constant = if m == 1 { b(-1) } else { b(1) };
            assert_eq!(phi.coefficients()[0], constant, "m = {m}");
        }
    }

    #[test]
    fn divisor_product_is_x_pow_m_minus_one() {
        for m in 1..=200u64 {
            let prod = divisors(m)
                .into_iter()
                .fold(Poly::one(), |acc, d| &acc * cyclotomic(d).poly());
            assert_eq!(prod, Poly::x_pow_minus_one(m as usize), "m = {m}");
        }
    }

    #[test]
    fn first_coefficient_above_one_in_magnitude() {
        // Φ_105 is the first cyclotomic polynomial with a coefficient −2.
        assert!((1..105).all(|m| cyclotomic(m).poly().max_abs_coeff() == b(1)));
        assert_eq!(cyclotomic(105).poly().max_abs_coeff(), b(2));
    }

    #[test]
    fn primitive_divisor_examples() {
        assert_eq!(primitive_divisors(&b(2), 7).unwrap(), PrimeSet::from_small(&[127]).unwrap());
        assert_eq!(primitive_divisors(&b(5), 2).unwrap(), PrimeSet::from_small(&[3]).unwrap());
        assert!(primitive_divisors(&b(2), 6).unwrap().is_empty());
        assert_eq!(primitive_divisors(&b(5), 1).unwrap(), PrimeSet::from_small(&[2]).unwrap());
        assert!(primitive_divisors(&b(1), 3).is_err());
    }

    #[test]
    fn zsigmondy_flags() {
        assert!(zsigmondy_exceptional(&b(2), 6));
        assert!(zsigmondy_exceptional(&b(-3), 2));
        assert!(!zsigmondy_exceptional(&b(5), 4));
        assert_eq!(primitive_divisors(&b(5), 4).unwrap(), PrimeSet::from_small(&[13]).unwrap());
    }

    #[test]
    fn greatest_primitive_divisor_examples() {
        let k = |a: i64, i: u64| greatest_primitive_divisor(&b(a), i).unwrap();
        assert_eq!(k(5, 4), b(13));
        assert_eq!(k(7, 1), b(3));
        assert_eq!(k(5, 9), b(15751));
        assert_eq!(k(2, 15), b(151));
        assert_eq!(k(3, 1), b(1));
        assert_eq!(k(3, 2), b(4));
    }

    /// Rᵢ(a)-part of aⁱ − 1 from a full factorization and brute-force orders.
    fn r_part_oracle(a: i64, i: u32) -> BigInt {
        let value = num_traits::pow(b(a), i as usize) - 1;
        let f = factorize(&value).unwrap();
        let primes: Vec<BigInt> = f
            .factors()
            .keys()
            .filter(|r| {
                (*r != &b(2) || a % 2 != 0)
                    && mult_order(r, &b(a)).unwrap() == BigInt::from(i)
            })
            .cloned()
            .collect();
        pi_part(&value, &PrimeSet::new(primes).unwrap()).unwrap()
    }

    #[test]
    fn formula_matches_r_part_on_small_grid() {
        for a in (-12i64..=12).filter(|a| a.abs() > 1) {
            for i in (1..=12u32).filter(|&i| i != 2) {
                assert_eq!(
                    greatest_primitive_divisor(&b(a), i as u64).unwrap(),
                    r_part_oracle(a, i),
                    "a={a} i={i}"
                );
            }
        }
    }

    #[test]
    fn gcd_correction_vanishes_when_stripped_index_misses_r_minus_1() {
        for i in 3..=60u64 {
            let r = *prime_divisors(i).last().unwrap();
            let mut s = i;
            while s % r == 0 {
                s /= r;
            }
            if (r - 1) % s == 0 {
                continue;
            }
            for a in (-20i64..=20).filter(|a| a.abs() > 1) {
                let g = eval_cyclotomic(s, &b(a)).gcd(&b(r as i64));
                assert!(g.is_one(), "i={i} a={a}");
            }
        }
    }

    #[test]
    fn mobius_and_phi() {
        let mu: Vec<i8> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        let phi: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(phi, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        assert!(BigInt::zero().is_zero());
    }
}
