// SPDX-License-Identifier: Apache-2.0

//! DOT and JSON forms of a prime graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use super::{GraphError, GraphMode, PrimeGraph, Vertex};
use crate::catalog::Group;

pub(crate) fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_opt_bigint<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    #[serde(with = "crate::bigint_str")]
    pub prime: BigInt,
    pub class: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub group: Group,
    #[serde(with = "crate::bigint_str")]
    pub q: BigInt,
    pub mode: String,
    pub vertices: Vec<VertexJson>,
    #[serde(with = "crate::bigint_str::pairs")]
    pub edges: Vec<[BigInt; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl PrimeGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            group: self.group,
            q: self.q.clone(),
            mode: self.mode.to_string(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    prime: v.prime.clone(),
                    class: v.class,
                })
                .collect(),
            edges: self
                .edges()
                .into_iter()
                .map(|(i, j)| [self.vertices[i].prime.clone(), self.vertices[j].prime.clone()])
                .collect(),
            warnings: self.warnings.clone(),
        }
    }

    /// Rebuilds a graph from its JSON form. The vertex 2 is recognised by value.
    pub fn from_json(doc: &GraphJson) -> Result<PrimeGraph, GraphError> {
        let mode: GraphMode = doc.mode.parse()?;
        let two = BigInt::from(2);
        let vertices = doc
            .vertices
            .iter()
            .map(|v| Vertex {
                prime: v.prime.clone(),
                class: v.class,
                is_two: v.prime == two,
            })
            .collect();
        let edges: Vec<(BigInt, BigInt)> = doc.edges.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        let mut g = PrimeGraph::from_parts(doc.group, doc.q.clone(), mode, vertices, &edges)?;
        g.warnings = doc.warnings.clone();
        Ok(g)
    }

    /// Graphviz form: one dashed cluster per e-class.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"GK({}({}))\" {{", self.group, self.q);
        let _ = writeln!(out, "  node [shape=circle];");
        let mut by_class: BTreeMap<(bool, u64), Vec<&Vertex>> = BTreeMap::new();
        for v in &self.vertices {
            by_class.entry((!v.is_two, v.class)).or_default().push(v);
        }
        for ((odd, class), vs) in &by_class {
            if *odd {
                let _ = writeln!(out, "  subgraph cluster_R{class} {{");
                let _ = writeln!(out, "    style=dashed; label=\"R{class}\";");
                for v in vs {
                    let _ = writeln!(out, "    \"{}\" [label=\"{} (e={})\"];", v.prime, v.prime, v.class);
                }
                let _ = writeln!(out, "  }}");
            } else {
                for v in vs {
                    let _ = writeln!(out, "  \"{}\" [label=\"{} (e={})\"];", v.prime, v.prime, v.class);
                }
            }
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", self.vertices[i].prime, self.vertices[j].prime);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_graph, independence_number, local_coclique};
    use super::*;

    #[test]
    fn json_round_trip_keeps_cocliques() {
        let g = build_graph(Group::E7, &BigInt::from(7), GraphMode::WithTwo).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back = PrimeGraph::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(independence_number(&g).witness, independence_number(&back).witness);
        let two = BigInt::from(2);
        assert_eq!(
            local_coclique(&g, &two).unwrap().witness,
            local_coclique(&back, &two).unwrap().witness
        );
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn dot_mentions_every_vertex() {
        let g = build_graph(Group::E7, &BigInt::from(5), GraphMode::WithTwo).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph"));
        assert!(dot.contains("style=dashed"));
        for v in g.vertices() {
            assert!(dot.contains(&format!("\"{}\" [label=\"{} (e={})\"]", v.prime, v.prime, v.class)));
        }
    }

    #[test]
    fn malformed_json_is_rejected() {
        let doc = GraphJson {
            group: Group::E7,
            q: BigInt::from(5),
            mode: "with-two".into(),
            vertices: vec![VertexJson {
                prime: BigInt::from(3),
                class: 2,
            }],
            edges: vec![[BigInt::from(3), BigInt::from(7)]],
            warnings: vec![],
        };
        assert!(PrimeGraph::from_json(&doc).is_err());
    }
}
