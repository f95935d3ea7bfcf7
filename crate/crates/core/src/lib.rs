// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic for prime graphs of the exceptional groups E₇(q) and
//! E₈(q): primitive prime divisors, maximal tori, Gruenberg–Kegel graphs with
//! exact maximum cocliques, and a registry of checkable claims.

pub mod catalog;
pub mod cyclo;
pub mod exec;
pub mod gkgraph;
pub mod numtheory;
pub mod verifier;

pub use exec::Exec;

/// Serde helpers writing big integers as decimal strings. Reading accepts a
/// string or a JSON number of any size.
pub mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub(crate) fn from_value<E: de::Error>(v: &Value) -> Result<BigInt, E> {
        match v {
            Value::String(s) => s.parse().map_err(E::custom),
            Value::Number(n) => n.to_string().parse().map_err(E::custom),
            other => Err(E::custom(format!("expected an integer, got {other}"))),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_value(&Value::deserialize(d)?)
    }

    /// The same for a list of pairs.
    pub mod pairs {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[[BigInt; 2]], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|[a, b]| [a.to_string(), b.to_string()]))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<[BigInt; 2]>, D::Error> {
            Vec::<[Value; 2]>::deserialize(d)?
                .iter()
                .map(|[a, b]| Ok([from_value(a)?, from_value(b)?]))
                .collect()
        }
    }
}
