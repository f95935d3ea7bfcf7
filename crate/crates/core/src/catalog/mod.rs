// SPDX-License-Identifier: Apache-2.0

//! Maximal tori of (2,q−1).E₇(q) and E₈(q) as products of cyclic groups whose
//! orders are products of cyclotomic values Φ_d(εq).
//!
//! Each record of `data/e7_tori.json` and `data/e8_tori.json` is one printed
//! cell: the verbatim LaTeX, and the cyclotomic indices of each cyclic
//! factor. Cells whose degree is wrong or that are not cyclotomic at all are
//! kept with status `flagged` and never enter order computations.

mod display;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{eval_cyclotomic, euler_phi};
use crate::numtheory::{factorize, is_prime, mult_order, NumError, SignChoice};

pub use display::{parse_cell, DisplayFactor, Expr};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("row {row_id} is flagged: {reason}")]
    Flagged { row_id: String, reason: String },
    #[error("row {row_id}: cannot parse display: {message}")]
    Display { row_id: String, message: String },
    #[error("membership criteria disagree for r = {r}, q = {q}: by order {by_order}, by torus {by_torus}")]
    CriteriaDisagree {
        r: BigInt,
        q: BigInt,
        by_order: bool,
        by_torus: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Group {
    E7,
    E8,
}

impl Group {
    pub const ALL: [Group; 2] = [Group::E7, Group::E8];

    pub fn rank(self) -> u64 {
        match self {
            Group::E7 => 7,
            Group::E8 => 8,
        }
    }

    /// Height of the highest root.
    ///
    /// 17 for E₇. The E₈ value 29 comes from the root system itself (sum of
    /// the coefficients of the highest root 2α₁+3α₂+4α₃+6α₄+5α₅+4α₆+3α₇+2α₈).
    pub fn height(self) -> u64 {
        match self {
            Group::E7 => 17,
            Group::E8 => 29,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::E7 => "E7",
            Group::E8 => "E8",
        })
    }
}

impl std::str::FromStr for Group {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "E7" => Ok(Group::E7),
            "E8" => Ok(Group::E8),
            other => Err(NumError::Domain(format!("unknown group {other:?}; expected E7 or E8"))),
        }
    }
}

/// q = pᵐ with p prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldParam {
    #[serde(with = "crate::bigint_str")]
    pub p: BigInt,
    pub m: u32,
    #[serde(with = "crate::bigint_str")]
    pub q: BigInt,
}

impl FieldParam {
    pub fn new(q: &BigInt) -> Result<Self, NumError> {
        if q < &BigInt::from(2) {
            return Err(NumError::Domain(format!("field order must be ≥ 2, got {q}")));
        }
        let f = factorize(q)?;
        if f.factors().len() != 1 {
            return Err(NumError::Domain(format!("{q} is not a prime power")));
        }
        let (p, m) = f.factors().iter().next().expect("one prime");
        Ok(Self {
            p: p.clone(),
            m: *m,
            q: q.clone(),
        })
    }

    pub fn from_u64(q: u64) -> Result<Self, NumError> {
        Self::new(&BigInt::from(q))
    }

    pub fn is_odd(&self) -> bool {
        self.q.is_odd()
    }

    /// The ε with q ≡ −ε (mod 4), for odd q.
    pub fn canonical_sign(&self) -> Option<SignChoice> {
        SignChoice::canonical_for(&self.q)
    }
}

/// One cyclic factor: the product of Φ_d over `indices`, evaluated at εq (or
/// at +q when `at_plus_q` is set).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicFactor {
    pub indices: Vec<u64>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub at_plus_q: bool,
    pub display: String,
}

impl CyclicFactor {
    pub fn degree(&self) -> u64 {
        self.indices.iter().map(|&d| euler_phi(d)).sum()
    }

    /// Order of the cyclic group at (q, ε).
    pub fn order(&self, q: &BigInt, eps: SignChoice) -> BigInt {
        let arg = if self.at_plus_q { q.clone() } else { eps.apply(q) };
        self.indices
            .iter()
            .map(|&d| eval_cyclotomic(d, &arg))
            .product::<BigInt>()
            .abs()
    }

    /// Cyclotomic indices at argument +q when evaluated at εq.
    pub fn normalized_indices(&self, eps: SignChoice) -> Vec<u64> {
        if self.at_plus_q || eps == SignChoice::Plus {
            return self.indices.clone();
        }
        self.indices.iter().map(|&d| negated_index(d)).collect()
    }
}

/// d' with Φ_d(−x) = ±Φ_{d'}(x).
pub fn negated_index(d: u64) -> u64 {
    match d % 4 {
        1 | 3 => 2 * d,
        2 => d / 2,
        _ => d,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeStatus {
    Valid,
    Flagged,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusShape {
    pub group: Group,
    pub row_id: String,
    /// Verbatim cell text.
    pub display: String,
    /// Corrected text used for evaluation when the printed cell is malformed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eval_display: Option<String>,
    /// `None` when the cell is not a product of cyclotomic values.
    pub factors: Option<Vec<CyclicFactor>>,
    pub status: ShapeStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    parsed: Option<Vec<DisplayFactor>>,
}

impl TorusShape {
    pub fn is_valid(&self) -> bool {
        self.status == ShapeStatus::Valid
    }

    pub fn degree(&self) -> Option<u64> {
        self.factors
            .as_ref()
            .map(|fs| fs.iter().map(CyclicFactor::degree).sum())
    }

    /// Text that is actually parsed.
    pub fn evaluated_display(&self) -> &str {
        self.eval_display.as_deref().unwrap_or(&self.display)
    }

    /// Factor orders read straight off the display. Works for flagged rows too.
    pub fn display_orders(&self, q: &BigInt, eps: SignChoice) -> Result<Vec<BigInt>, CatalogError> {
        let parsed = self.parsed.as_ref().ok_or_else(|| CatalogError::Display {
            row_id: self.row_id.clone(),
            message: "display did not parse".into(),
        })?;
        Ok(parsed.iter().map(|f| f.order(q, eps)).collect())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    group: Group,
    row_id: String,
    display: String,
    #[serde(default)]
    factors: Option<Vec<Vec<u64>>>,
    arg_sign_convention: String,
    #[serde(default)]
    plus_q_factors: Vec<usize>,
    #[serde(default)]
    eval_display: Option<String>,
    #[serde(default)]
    note: Option<String>,
    #[serde(default)]
    expand: Option<Group>,
    #[serde(default)]
    prefix: Vec<Vec<u64>>,
}

const E7_DATA: &str = include_str!("../../data/e7_tori.json");
const E8_DATA: &str = include_str!("../../data/e8_tori.json");

fn build_shape(
    group: Group,
    row_id: String,
    display: String,
    eval_display: Option<String>,
    indices: Option<Vec<(Vec<u64>, bool)>>,
    mut notes: Vec<String>,
) -> TorusShape {
    let text = eval_display.as_deref().unwrap_or(&display);
    let parsed = match parse_cell(text) {
        Ok(p) => Some(p),
        Err(e) => {
            notes.push(format!("display does not parse: {e}"));
            None
        }
    };
    let factors = indices.map(|list| {
        list.into_iter()
            .enumerate()
            .map(|(i, (indices, at_plus_q))| CyclicFactor {
                indices,
                at_plus_q,
                display: parsed
                    .as_ref()
                    .and_then(|p| p.get(i))
                    .map(|f| f.source.clone())
                    .unwrap_or_default(),
            })
            .collect::<Vec<_>>()
    });
    let mut status = ShapeStatus::Valid;
    match &factors {
        None => {
            status = ShapeStatus::Flagged;
            notes.push("not a product of cyclotomic values".into());
        }
        Some(fs) => {
            let degree: u64 = fs.iter().map(CyclicFactor::degree).sum();
            if degree != group.rank() {
                status = ShapeStatus::Flagged;
                notes.push(format!("total degree {degree}, expected {}", group.rank()));
            }
            if parsed.as_ref().is_some_and(|p| p.len() != fs.len()) {
                status = ShapeStatus::Flagged;
                notes.push("display and factor list differ in length".into());
            }
        }
    }
    if parsed.is_none() {
        status = ShapeStatus::Flagged;
    }
    TorusShape {
        group,
        row_id,
        display,
        eval_display,
        factors,
        status,
        notes,
        parsed,
    }
}

fn load(group: Group) -> Vec<TorusShape> {
    let data = match group {
        Group::E7 => E7_DATA,
        Group::E8 => E8_DATA,
    };
    let raw: Vec<RawRecord> = serde_json::from_str(data).expect("bundled torus data is well formed");
    let mut out = Vec::new();
    for rec in raw {
        assert_eq!(rec.group, group, "record {} filed under the wrong group", rec.row_id);
        assert_eq!(rec.arg_sign_convention, "epsilon-q", "record {}", rec.row_id);
        let notes: Vec<String> = rec.note.into_iter().collect();
        if let Some(sub) = rec.expand {
            let prefix_text = r"Z_{\epsilon{q}-1}\times";
            for inner in torus_catalog(sub) {
                let indices = inner.factors.as_ref().map(|fs| {
                    rec.prefix
                        .iter()
                        .map(|p| (p.clone(), false))
                        .chain(fs.iter().map(|f| (f.indices.clone(), f.at_plus_q)))
                        .collect()
                });
                out.push(build_shape(
                    group,
                    format!("{}+{}", rec.row_id, inner.row_id),
                    format!("{prefix_text}{}", inner.display),
                    inner.eval_display.as_ref().map(|e| format!("{prefix_text}{e}")),
                    indices,
                    inner
                        .notes
                        .iter()
                        .filter(|n| !n.starts_with("total degree") && !n.starts_with("not a product"))
                        .cloned()
                        .collect(),
                ));
            }
            continue;
        }
        let indices = rec.factors.map(|fs| {
            fs.into_iter()
                .enumerate()
                .map(|(i, d)| (d, rec.plus_q_factors.contains(&i)))
                .collect()
        });
        out.push(build_shape(group, rec.row_id, rec.display, rec.eval_display, indices, notes));
    }
    out
}

/// Every printed cell of the group, flagged ones included, in table order.
pub fn torus_catalog(group: Group) -> &'static [TorusShape] {
    static E7: OnceLock<Vec<TorusShape>> = OnceLock::new();
    static E8: OnceLock<Vec<TorusShape>> = OnceLock::new();
    match group {
        Group::E7 => E7.get_or_init(|| load(Group::E7)),
        Group::E8 => E8.get_or_init(|| load(Group::E8)),
    }
}

pub fn valid_shapes(group: Group) -> impl Iterator<Item = &'static TorusShape> {
    torus_catalog(group).iter().filter(|s| s.is_valid())
}

pub fn find_shape(group: Group, row_id: &str) -> Option<&'static TorusShape> {
    torus_catalog(group).iter().find(|s| s.row_id == row_id)
}

/// Orders of the cyclic factors at (q, ε).
pub fn eval_torus(shape: &TorusShape, q: &BigInt, eps: SignChoice) -> Result<Vec<BigInt>, CatalogError> {
    if q < &BigInt::from(2) {
        return Err(NumError::Domain(format!("q must be ≥ 2, got {q}")).into());
    }
    match (&shape.factors, shape.status) {
        (Some(fs), ShapeStatus::Valid) => Ok(fs.iter().map(|f| f.order(q, eps)).collect()),
        _ => Err(CatalogError::Flagged {
            row_id: shape.row_id.clone(),
            reason: shape.notes.join("; "),
        }),
    }
}

pub fn torus_order(shape: &TorusShape, q: &BigInt, eps: SignChoice) -> Result<BigInt, CatalogError> {
    Ok(eval_torus(shape, q, eps)?.into_iter().product())
}

/// Exponent of the torus: the lcm of its cyclic factor orders.
pub fn torus_exponent(shape: &TorusShape, q: &BigInt, eps: SignChoice) -> Result<BigInt, CatalogError> {
    Ok(eval_torus(shape, q, eps)?
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x)))
}

/// Indices d such that Φ_d(q) occurs in some valid torus for some ε.
pub fn degree_set(group: Group) -> &'static BTreeSet<u64> {
    static E7: OnceLock<BTreeSet<u64>> = OnceLock::new();
    static E8: OnceLock<BTreeSet<u64>> = OnceLock::new();
    let build = move || {
        let mut set = BTreeSet::new();
        for shape in valid_shapes(group) {
            for f in shape.factors.iter().flatten() {
                for eps in SignChoice::BOTH {
                    set.extend(f.normalized_indices(eps));
                }
            }
        }
        set
    };
    match group {
        Group::E7 => E7.get_or_init(build),
        Group::E8 => E8.get_or_init(build),
    }
}

/// A torus order evaluated at a fixed (q, ε).
#[derive(Clone, Debug)]
pub struct TorusOrder {
    pub row_id: &'static str,
    pub eps: SignChoice,
    pub factor_orders: Vec<BigInt>,
    pub order: BigInt,
}

/// All valid torus orders of the group over the field, for both signs.
pub fn torus_orders(group: Group, field: &FieldParam) -> Vec<TorusOrder> {
    let mut out = Vec::new();
    for shape in valid_shapes(group) {
        for eps in SignChoice::BOTH {
            let factor_orders = eval_torus(shape, &field.q, eps).expect("valid shape");
            let order = factor_orders.iter().product();
            out.push(TorusOrder {
                row_id: &shape.row_id,
                eps,
                factor_orders,
                order,
            });
        }
    }
    out
}

/// Membership in π(G) for a fixed group and field, with both criteria.
pub struct PiMembership {
    group: Group,
    field: FieldParam,
    orders: Vec<TorusOrder>,
}

impl PiMembership {
    pub fn new(group: Group, field: FieldParam) -> Self {
        let orders = torus_orders(group, &field);
        Self { group, field, orders }
    }

    pub fn field(&self) -> &FieldParam {
        &self.field
    }

    pub fn orders(&self) -> &[TorusOrder] {
        &self.orders
    }

    /// (r = p or e(r, q) in the degree set, r = p or r divides a torus order).
    pub fn criteria(&self, r: &BigInt) -> Result<(bool, bool), CatalogError> {
        if !is_prime(r) {
            return Err(NumError::Domain(format!("{r} is not prime")).into());
        }
        if r == &self.field.p {
            return Ok((true, true));
        }
        let e = mult_order(r, &self.field.q)?;
        let by_order = e
            .try_into()
            .map(|e: u64| degree_set(self.group).contains(&e))
            .unwrap_or(false);
        let by_torus = self.orders.iter().any(|t| (&t.order % r).is_zero());
        Ok((by_order, by_torus))
    }

    pub fn contains(&self, r: &BigInt) -> Result<bool, CatalogError> {
        let (by_order, by_torus) = self.criteria(r)?;
        if by_order != by_torus {
            return Err(CatalogError::CriteriaDisagree {
                r: r.clone(),
                q: self.field.q.clone(),
                by_order,
                by_torus,
            });
        }
        Ok(by_order)
    }
}

/// r ∈ π(G(q)).
pub fn is_in_pi(group: Group, q: &BigInt, r: &BigInt) -> Result<bool, CatalogError> {
    PiMembership::new(group, FieldParam::new(q)?).contains(r)
}

/// The least power of p exceeding the height of the root system.
pub fn unipotent_exponent(group: Group, p: &BigInt) -> Result<BigInt, NumError> {
    if !is_prime(p) {
        return Err(NumError::Domain(format!("{p} is not prime")));
    }
    let h = BigInt::from(group.height());
    let mut x = p.clone();
    while x <= h {
        x *= p;
    }
    Ok(x)
}

/// A row of the list of simple groups with many pairwise non-adjacent primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub group: Group,
    pub condition: &'static str,
    pub t2: u32,
    pub rho2_classes: &'static [u64],
    pub t: u32,
}

pub const FAMILY_ROWS: [FamilyRow; 4] = [
    FamilyRow {
        group: Group::E7,
        condition: "u ≡ 1 (mod 4)",
        t2: 3,
        rho2_classes: &[14, 18],
        t: 8,
    },
    FamilyRow {
        group: Group::E7,
        condition: "u ≡ 3 (mod 4)",
        t2: 3,
        rho2_classes: &[7, 9],
        t: 8,
    },
    FamilyRow {
        group: Group::E7,
        condition: "u ≡ 0 (mod 2)",
        t2: 5,
        rho2_classes: &[7, 9, 14, 18],
        t: 8,
    },
    FamilyRow {
        group: Group::E8,
        condition: "none",
        t2: 5,
        rho2_classes: &[15, 20, 24, 30],
        t: 12,
    },
];

/// The family row whose condition u satisfies.
pub fn family_row(group: Group, u: &BigInt) -> &'static FamilyRow {
    let r = u.mod_floor(&BigInt::from(4));
    let cond = match (group, r.try_into().unwrap_or(0u8)) {
        (Group::E8, _) => "none",
        (Group::E7, 1) => "u ≡ 1 (mod 4)",
        (Group::E7, 3) => "u ≡ 3 (mod 4)",
        (Group::E7, _) => "u ≡ 0 (mod 2)",
    };
    FAMILY_ROWS
        .iter()
        .find(|row| row.group == group && row.condition == cond)
        .expect("every residue has a row")
}

#[derive(Clone, Debug, Serialize)]
pub struct FlaggedRow {
    pub row_id: String,
    pub display: String,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DisplayMismatch {
    pub row_id: String,
    #[serde(with = "crate::bigint_str")]
    pub q: BigInt,
    pub eps: String,
    pub factor: usize,
    #[serde(with = "crate::bigint_str")]
    pub parsed: BigInt,
    #[serde(with = "crate::bigint_str")]
    pub display: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub group: Group,
    pub total: usize,
    pub valid: usize,
    pub flagged: Vec<FlaggedRow>,
    pub samples: usize,
    pub display_mismatches: Vec<DisplayMismatch>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.display_mismatches.is_empty()
    }
}

/// Field orders used to compare parsed factors with their displays.
pub const SAMPLE_QS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// Degree check plus per-factor agreement of display and cyclotomic form on
/// every (q, ε) with q in [`SAMPLE_QS`].
pub fn validate(group: Group) -> ValidationReport {
    let shapes = torus_catalog(group);
    let mut flagged = Vec::new();
    let mut display_mismatches = Vec::new();
    for shape in shapes {
        if !shape.is_valid() {
            flagged.push(FlaggedRow {
                row_id: shape.row_id.clone(),
                display: shape.display.clone(),
                reasons: shape.notes.clone(),
            });
            continue;
        }
        for &q in &SAMPLE_QS {
            let q = BigInt::from(q);
            for eps in SignChoice::BOTH {
                let parsed = eval_torus(shape, &q, eps).expect("valid shape");
                let shown = shape.display_orders(&q, eps).expect("valid shapes parse");
                for (i, (a, b)) in parsed.iter().zip(&shown).enumerate() {
                    if a != b {
                        display_mismatches.push(DisplayMismatch {
                            row_id: shape.row_id.clone(),
                            q: q.clone(),
                            eps: eps.to_string(),
                            factor: i,
                            parsed: a.clone(),
                            display: b.clone(),
                        });
                    }
                }
            }
        }
    }
    ValidationReport {
        group,
        total: shapes.len(),
        valid: shapes.len() - flagged.len(),
        flagged,
        samples: SAMPLE_QS.len() * 2,
        display_mismatches,
    }
}

/// Row ids grouped by identical factor lists, for rows printed twice.
pub fn duplicate_rows(group: Group) -> Vec<Vec<String>> {
    let mut by_shape: BTreeMap<Vec<(Vec<u64>, bool)>, Vec<String>> = BTreeMap::new();
    for shape in valid_shapes(group) {
        let key = shape
            .factors
            .iter()
            .flatten()
            .map(|f| {
                let mut d = f.indices.clone();
                d.sort_unstable();
                (d, f.at_plus_q)
            })
            .collect::<Vec<_>>();
        let mut key = key;
        key.sort();
        by_shape.entry(key).or_default().push(shape.row_id.clone());
    }
    by_shape.into_values().filter(|v| v.len() > 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| b(x)).collect()
    }

    #[test]
    fn catalog_sizes_and_flags() {
        let e7 = torus_catalog(Group::E7);
        assert_eq!(e7.len(), 40);
        let flagged: Vec<&str> = e7
            .iter()
            .filter(|s| !s.is_valid())
            .map(|s| s.row_id.as_str())
            .collect();
        assert_eq!(flagged, vec!["E7-14L", "E7-14R", "E7-15L"]);
        assert_eq!(find_shape(Group::E7, "E7-14L").unwrap().degree(), Some(8));
        assert_eq!(find_shape(Group::E7, "E7-15L").unwrap().degree(), Some(5));
        assert_eq!(find_shape(Group::E7, "E7-14R").unwrap().factors, None);

        let e8 = torus_catalog(Group::E8);
        assert_eq!(e8.len(), 41 + 40);
        let e8_flagged: Vec<&str> = e8
            .iter()
            .filter(|s| !s.is_valid())
            .map(|s| s.row_id.as_str())
            .collect();
        assert_eq!(e8_flagged, vec!["E8-01L+E7-14L", "E8-01L+E7-14R", "E8-01L+E7-15L"]);
        assert!(valid_shapes(Group::E8).all(|s| s.degree() == Some(8)));
        assert!(valid_shapes(Group::E7).all(|s| s.degree() == Some(7)));
    }

    #[test]
    fn named_shapes() {
        let s = find_shape(Group::E7, "E7-19R").unwrap();
        assert_eq!(s.factors.as_ref().unwrap()[0].indices, vec![1, 7]);
        assert_eq!(eval_torus(s, &b(5), SignChoice::Minus).unwrap(), ints(&[78126]));

        let s = find_shape(Group::E7, "E7-01L").unwrap();
        assert_eq!(eval_torus(s, &b(5), SignChoice::Plus).unwrap(), ints(&[4; 7]));

        let s = find_shape(Group::E7, "E7-01R").unwrap();
        assert_eq!(eval_torus(s, &b(5), SignChoice::Minus).unwrap(), ints(&[6, 15501]));
        assert_eq!(torus_exponent(s, &b(5), SignChoice::Minus).unwrap(), b(15501 * 2));
    }

    #[test]
    fn flagged_rows_refuse_evaluation_but_show_their_display() {
        let s = find_shape(Group::E7, "E7-15L").unwrap();
        assert!(matches!(
            eval_torus(s, &b(5), SignChoice::Plus),
            Err(CatalogError::Flagged { .. })
        ));
        assert_eq!(s.display_orders(&b(5), SignChoice::Plus).unwrap(), ints(&[4, 31, 24]));
        let s = find_shape(Group::E7, "E7-14R").unwrap();
        // (5 − 1)(5⁶ + 5 + 1)
        assert_eq!(s.display_orders(&b(5), SignChoice::Plus).unwrap(), ints(&[4 * 15631]));
    }

    #[test]
    fn degree_sets() {
        let e7: Vec<u64> = degree_set(Group::E7).iter().copied().collect();
        assert_eq!(e7, vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18]);
        let e8: Vec<u64> = degree_set(Group::E8).iter().copied().collect();
        assert_eq!(e8, vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 18, 20, 24, 30]);
    }

    #[test]
    fn validation_is_clean() {
        for g in Group::ALL {
            let report = validate(g);
            assert!(report.is_clean(), "{:?}", report.display_mismatches);
            assert_eq!(report.flagged.len(), 3);
            assert_eq!(report.samples, 20);
        }
    }

    #[test]
    fn membership_examples() {
        assert!(!is_in_pi(Group::E7, &b(7), &b(31)).unwrap());
        assert!(is_in_pi(Group::E7, &b(5), &b(31)).unwrap());
        assert!(is_in_pi(Group::E8, &b(2), &b(41)).unwrap());
        assert!(is_in_pi(Group::E7, &b(5), &b(5)).unwrap());
        assert!(is_in_pi(Group::E7, &b(6), &b(5)).is_err());
        assert!(is_in_pi(Group::E7, &b(5), &b(9)).is_err());
    }

    #[test]
    fn unipotent_exponents() {
        assert_eq!(unipotent_exponent(Group::E7, &b(2)).unwrap(), b(32));
        assert_eq!(unipotent_exponent(Group::E7, &b(5)).unwrap(), b(25));
        assert_eq!(unipotent_exponent(Group::E7, &b(19)).unwrap(), b(19));
        assert_eq!(unipotent_exponent(Group::E8, &b(5)).unwrap(), b(125));
        assert_eq!(unipotent_exponent(Group::E8, &b(31)).unwrap(), b(31));
    }

    #[test]
    fn field_params() {
        let f = FieldParam::from_u64(27).unwrap();
        assert_eq!((f.p.clone(), f.m), (b(3), 3));
        assert_eq!(f.canonical_sign(), Some(SignChoice::Plus));
        assert!(FieldParam::from_u64(12).is_err());
        assert!(FieldParam::from_u64(1).is_err());
        assert_eq!(FieldParam::from_u64(8).unwrap().canonical_sign(), None);
    }

    #[test]
    fn duplicates_in_e7() {
        let d = duplicate_rows(Group::E7);
        assert!(d.contains(&vec!["E7-03R".to_string(), "E7-08L".to_string()]));
        assert!(d.contains(&vec!["E7-05R".to_string(), "E7-11L".to_string()]));
        assert!(d.contains(&vec!["E7-10R".to_string(), "E7-16L".to_string()]));
    }

    #[test]
    fn family_rows_by_residue() {
        assert_eq!(family_row(Group::E7, &b(5)).rho2_classes, &[14, 18]);
        assert_eq!(family_row(Group::E7, &b(7)).rho2_classes, &[7, 9]);
        assert_eq!(family_row(Group::E7, &b(8)).t2, 5);
        assert_eq!(family_row(Group::E8, &b(3)).t, 12);
    }

    #[test]
    fn odd_q_half_of_q7_minus_eps_is_odd() {
        for q in (3..200i64).step_by(2) {
            let eps = SignChoice::canonical_for(&b(q)).unwrap();
            let v: BigInt = (num_traits::pow(b(q), 7) - eps.as_i64()) / 2;
            assert!(v.is_odd(), "q = {q}");
        }
    }
}
