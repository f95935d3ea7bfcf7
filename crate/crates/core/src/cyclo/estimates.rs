// SPDX-License-Identifier: Apache-2.0

//! Closed forms and two-sided bounds for products of greatest primitive
//! divisors kᵢ(n), n ≥ 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::{greatest_primitive_divisor, Poly};
use crate::numtheory::NumError;

/// `∏ k_i(n) = numerator(n) / gcd(modulus, inner(n))` over `indices`.
#[derive(Clone, Copy, Debug)]
pub struct ClosedForm {
    pub indices: &'static [u64],
    /// Coefficients, constant term first.
    pub numerator: &'static [i64],
    pub gcd_with: Option<(i64, &'static [i64])>,
}

impl ClosedForm {
    pub fn eval(&self, n: &BigInt) -> BigInt {
        let num = Poly::from_i64s(self.numerator).eval(n);
        match self.gcd_with {
            Some((c, inner)) => {
                let g = Poly::from_i64s(inner).eval(n).gcd(&BigInt::from(c));
                num / g
            }
            None => num,
        }
    }
}

/// `lower · n^exponent ≤ ∏ k_i(n) ≤ upper · n^exponent` over `indices`.
#[derive(Clone, Copy, Debug)]
pub struct EstimateItem {
    pub item: u8,
    pub forms: &'static [ClosedForm],
    pub indices: &'static [u64],
    pub exponent: u32,
    pub lower: (u64, u64),
    pub upper: (u64, u64),
    /// Index pair whose closed forms are suspected to be interchanged.
    pub swap: Option<(u64, u64)>,
}

const fn form(indices: &'static [u64], numerator: &'static [i64], gcd_with: Option<(i64, &'static [i64])>) -> ClosedForm {
    ClosedForm {
        indices,
        numerator,
        gcd_with,
    }
}

const N_MINUS_1: &[i64] = &[-1, 1];
const N_PLUS_1: &[i64] = &[1, 1];
const N2_MINUS_1: &[i64] = &[-1, 0, 1];
const N2_PLUS_1: &[i64] = &[1, 0, 1];

pub const ESTIMATE_ITEMS: [EstimateItem; 11] = [
    EstimateItem {
        item: 1,
        forms: &[form(&[1, 2], &[-1, 0, 1], Some((2, N_MINUS_1)))],
        indices: &[1, 2],
        exponent: 2,
        lower: (1, 4),
        upper: (1, 1),
        swap: None,
    },
    EstimateItem {
        item: 2,
        forms: &[form(&[3, 6], &[1, 0, 1, 0, 1], Some((3, N2_MINUS_1)))],
        indices: &[3, 6],
        exponent: 4,
        lower: (1, 3),
        upper: (5, 4),
        swap: None,
    },
    EstimateItem {
        item: 3,
        forms: &[form(&[4], &[1, 0, 1], Some((2, N_MINUS_1)))],
        indices: &[4],
        exponent: 2,
        lower: (1, 2),
        upper: (5, 4),
        swap: None,
    },
    EstimateItem {
        item: 4,
        forms: &[form(&[5, 10], &[1, 0, 1, 0, 1, 0, 1, 0, 1], Some((5, N2_MINUS_1)))],
        indices: &[5, 10],
        exponent: 8,
        lower: (1, 5),
        upper: (4, 3),
        swap: None,
    },
    EstimateItem {
        item: 5,
        forms: &[
            form(&[7], &[1, 1, 1, 1, 1, 1, 1], Some((7, N_MINUS_1))),
            form(&[14], &[1, -1, 1, -1, 1, -1, 1], Some((7, N_PLUS_1))),
        ],
        indices: &[7, 14],
        exponent: 12,
        lower: (1, 7),
        upper: (3, 2),
        swap: None,
    },
    EstimateItem {
        item: 6,
        forms: &[form(&[8], &[1, 0, 0, 0, 1], Some((2, N_MINUS_1)))],
        indices: &[8],
        exponent: 4,
        lower: (1, 2),
        upper: (17, 16),
        swap: None,
    },
    EstimateItem {
        item: 7,
        forms: &[
            form(&[9], &[1, 0, 0, 1, 0, 0, 1], Some((3, N_MINUS_1))),
            form(&[18], &[1, 0, 0, -1, 0, 0, 1], Some((3, N_PLUS_1))),
        ],
        indices: &[9, 18],
        exponent: 12,
        lower: (1, 3),
        upper: (65, 64),
        swap: None,
    },
    EstimateItem {
        item: 8,
        forms: &[form(&[12], &[1, 0, -1, 0, 1], None)],
        indices: &[12],
        exponent: 4,
        lower: (3, 4),
        upper: (1, 1),
        swap: None,
    },
    EstimateItem {
        item: 9,
        forms: &[
            form(&[15], &[1, 1, 0, -1, -1, -1, 0, 1, 1], None),
            form(&[30], &[1, -1, 0, 1, -1, 1, 0, -1, 1], None),
        ],
        indices: &[15, 30],
        exponent: 16,
        lower: (3, 4),
        upper: (1, 1),
        swap: Some((15, 30)),
    },
    EstimateItem {
        item: 10,
        forms: &[form(&[20], &[1, 0, -1, 0, 1, 0, -1, 0, 1], Some((5, N2_PLUS_1)))],
        indices: &[20],
        exponent: 8,
        lower: (4, 25),
        upper: (1, 1),
        swap: None,
    },
    EstimateItem {
        item: 11,
        forms: &[form(&[24], &[1, 0, 0, 0, -1, 0, 0, 0, 1], None)],
        indices: &[24],
        exponent: 8,
        lower: (15, 16),
        upper: (1, 1),
        swap: None,
    },
];

/// Outcome of [`estimate_check`] for one item and one n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstimateCheck {
    pub item: u8,
    pub n: BigInt,
    /// Every closed form as printed equals the corresponding product of kᵢ(n).
    pub exact_holds: bool,
    /// The same with the two suspect indices interchanged; `None` when the item
    /// has no suspect pair.
    pub swapped_holds: Option<bool>,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// kᵢ(n) for each index of the item.
    pub values: Vec<(u64, BigInt)>,
    /// Closed-form values as printed, in form order.
    pub closed_forms: Vec<BigInt>,
    pub product: BigInt,
}

fn forms_hold(forms: &[ClosedForm], n: &BigInt, k: impl Fn(u64) -> BigInt) -> bool {
    forms
        .iter()
        .all(|f| f.eval(n) == f.indices.iter().map(|&i| k(i)).product::<BigInt>())
}

/// Checks one item at one n. Items are numbered 1 through 11.
pub fn estimate_check(item: u8, n: &BigInt) -> Result<EstimateCheck, NumError> {
    let def = ESTIMATE_ITEMS
        .iter()
        .find(|it| it.item == item)
        .ok_or_else(|| NumError::Domain(format!("no estimate item {item}")))?;
    if n < &BigInt::from(2) {
        return Err(NumError::Domain(format!("need n ≥ 2, got {n}")));
    }
    let values = def
        .indices
        .iter()
        .map(|&i| Ok((i, greatest_primitive_divisor(n, i)?)))
        .collect::<Result<Vec<_>, NumError>>()?;
    let k = |i: u64| {
        values
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, v)| v.clone())
            .expect("index belongs to the item")
    };
    let exact_holds = forms_hold(def.forms, n, k);
    let swapped_holds = def.swap.map(|(a, b)| {
        forms_hold(def.forms, n, |i| {
            k(if i == a {
                b
            } else if i == b {
                a
            } else {
                i
            })
        })
    });
    let product: BigInt = values.iter().map(|(_, v)| v.clone()).product();
    let power = num_traits::pow(n.abs(), def.exponent as usize);
    let (ln, ld) = def.lower;
    let (un, ud) = def.upper;
    let lower_holds = &power * ln <= &product * ld;
    let upper_holds = &product * ud <= &power * un;
    Ok(EstimateCheck {
        item,
        n: n.clone(),
        exact_holds,
        swapped_holds,
        lower_holds,
        upper_holds,
        closed_forms: def.forms.iter().map(|f| f.eval(n)).collect(),
        values,
        product,
    })
}

impl EstimateCheck {
    /// Everything holds, reading the suspect pair in whichever order matches.
    pub fn holds_up_to_swap(&self) -> bool {
        (self.exact_holds || self.swapped_holds == Some(true)) && self.lower_holds && self.upper_holds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(item: u8, n: i64) -> EstimateCheck {
        estimate_check(item, &BigInt::from(n)).unwrap()
    }

    #[test]
    fn named_examples() {
        let c = check(8, 10);
        assert!(c.exact_holds && c.lower_holds && c.upper_holds);
        assert_eq!(c.values, vec![(12, BigInt::from(9901))]);

        let c = check(3, 5);
        assert!(c.exact_holds && c.lower_holds && c.upper_holds);
        assert_eq!(c.product, BigInt::from(13));

        let c = check(9, 2);
        assert!(!c.exact_holds);
        assert_eq!(c.swapped_holds, Some(true));
        assert_eq!(c.values[0], (15, BigInt::from(151)));
        assert_eq!(c.closed_forms[0], BigInt::from(331));
    }

    #[test]
    fn all_items_up_to_two_hundred() {
        for item in 1..=11 {
            for n in 2..=200 {
                let c = check(item, n);
                assert!(c.lower_holds && c.upper_holds, "item {item} n {n}");
                if item == 9 {
                    assert!(!c.exact_holds && c.swapped_holds == Some(true), "n {n}");
                } else {
                    assert!(c.exact_holds, "item {item} n {n}");
                    assert_eq!(c.swapped_holds, None);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(estimate_check(0, &BigInt::from(5)).is_err());
        assert!(estimate_check(12, &BigInt::from(5)).is_err());
        assert!(estimate_check(1, &BigInt::from(1)).is_err());
    }
}
