// SPDX-License-Identifier: Apache-2.0

//! Gruenberg–Kegel prime graphs of E₇(q) and E₈(q).
//!
//! Odd vertices other than the characteristic come from the valid maximal
//! tori: r and s are adjacent when r·s divides some torus order, for either
//! sign ε. Vertex 2 is joined by rule: for odd q it is non-adjacent exactly to
//! the classes e(r, εq) ∈ {7, 9} of E₇ (canonical ε) and e(r, q) ∈ {15, 20,
//! 24, 30} of E₈. The characteristic itself is never a vertex.

mod bits;
mod export;
mod solver;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{degree_set, torus_catalog, torus_orders, CatalogError, FieldParam, Group, TorusOrder};
use crate::cyclo::eval_cyclotomic;
use crate::exec::Exec;
use crate::numtheory::{factorize, mult_order, NumError, SignChoice};

use bits::Bits;
pub use export::{GraphJson, VertexJson};
use solver::Solver;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{0} is not a vertex of the graph")]
    NotAVertex(BigInt),
    #[error("class {class_a} and class {class_b} are not uniform: {detail}")]
    NonUniformClass {
        class_a: String,
        class_b: String,
        detail: String,
    },
    #[error("malformed graph: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphMode {
    /// Odd primes other than the characteristic.
    Semisimple,
    /// As above, plus 2 joined by rule; odd q only.
    WithTwo,
}

impl fmt::Display for GraphMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphMode::Semisimple => "semisimple",
            GraphMode::WithTwo => "with-two",
        })
    }
}

impl std::str::FromStr for GraphMode {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "semisimple" | "semisimple-odd" => Ok(GraphMode::Semisimple),
            "with-two" => Ok(GraphMode::WithTwo),
            other => Err(NumError::Domain(format!("unknown graph mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    #[serde(with = "crate::bigint_str")]
    pub prime: BigInt,
    /// e(r, q), with the mod-4 convention for r = 2.
    pub class: u64,
    pub is_two: bool,
}

/// Why an edge is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeProvenance {
    Torus { row_id: String, eps: String },
    Rule { rule: String },
    Imported,
}

#[derive(Clone, Debug)]
pub struct PrimeGraph {
    pub group: Group,
    pub q: BigInt,
    pub mode: GraphMode,
    vertices: Vec<Vertex>,
    adj: Vec<Bits>,
    provenance: BTreeMap<(usize, usize), EdgeProvenance>,
    warnings: Vec<String>,
}

impl PrimeGraph {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn index_of(&self, r: &BigInt) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.prime.cmp(r)).ok()
    }

    pub fn adjacent(&self, r: &BigInt, s: &BigInt) -> Result<bool, GraphError> {
        let i = self.index_of(r).ok_or_else(|| GraphError::NotAVertex(r.clone()))?;
        let j = self.index_of(s).ok_or_else(|| GraphError::NotAVertex(s.clone()))?;
        Ok(self.adj[i].contains(j))
    }

    /// Edges as index pairs (i < j), ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.adj[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    pub fn provenance(&self, r: &BigInt, s: &BigInt) -> Option<&EdgeProvenance> {
        let (i, j) = (self.index_of(r)?, self.index_of(s)?);
        self.provenance.get(&(i.min(j), i.max(j)))
    }

    /// Builds a graph from explicit vertices and edges (by prime).
    pub fn from_parts(
        group: Group,
        q: BigInt,
        mode: GraphMode,
        mut vertices: Vec<Vertex>,
        edges: &[(BigInt, BigInt)],
    ) -> Result<Self, GraphError> {
        vertices.sort_by(|a, b| a.prime.cmp(&b.prime));
        if vertices.windows(2).any(|w| w[0].prime == w[1].prime) {
            return Err(GraphError::Malformed("duplicate vertex".into()));
        }
        let n = vertices.len();
        let mut g = PrimeGraph {
            group,
            q,
            mode,
            vertices,
            adj: vec![Bits::empty(n); n],
            provenance: BTreeMap::new(),
            warnings: Vec::new(),
        };
        for (r, s) in edges {
            let i = g.index_of(r).ok_or_else(|| GraphError::NotAVertex(r.clone()))?;
            let j = g.index_of(s).ok_or_else(|| GraphError::NotAVertex(s.clone()))?;
            if i == j {
                return Err(GraphError::Malformed(format!("self-loop at {r}")));
            }
            g.add_edge(i, j, EdgeProvenance::Imported);
        }
        Ok(g)
    }

    fn add_edge(&mut self, i: usize, j: usize, why: EdgeProvenance) {
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        self.provenance.entry((i.min(j), i.max(j))).or_insert(why);
    }
}

/// Primes r with e(r, εq) ∈ classes are the non-neighbours of 2.
fn two_excluded(group: Group, field: &FieldParam, r: &BigInt, class: u64) -> Result<bool, NumError> {
    Ok(match group {
        Group::E7 => {
            let eps = field.canonical_sign().expect("odd q");
            let e = mult_order(r, &eps.apply(&field.q))?;
            e == BigInt::from(7) || e == BigInt::from(9)
        }
        Group::E8 => [15, 20, 24, 30].contains(&class),
    })
}

pub fn build_graph(group: Group, q: &BigInt, mode: GraphMode) -> Result<PrimeGraph, GraphError> {
    build_graph_with(group, q, mode, Exec::default())
}

pub fn build_graph_with(group: Group, q: &BigInt, mode: GraphMode, exec: Exec) -> Result<PrimeGraph, GraphError> {
    let field = FieldParam::new(q)?;
    if mode == GraphMode::WithTwo && !field.is_odd() {
        return Err(NumError::Domain(format!("with-two mode needs odd q, got {q}")).into());
    }
    let two = BigInt::from(2);

    // Every prime of a torus order divides Φ_d(q) for some d in the degree set.
    let degrees: Vec<u64> = degree_set(group).iter().copied().collect();
    let factored = exec.map(&degrees, |&d| factorize(&eval_cyclotomic(d, q)));
    let mut primes = BTreeSet::new();
    for f in factored {
        primes.extend(f?.factors().keys().filter(|r| **r != two && **r != field.p).cloned());
    }
    let prime_list: Vec<BigInt> = primes.into_iter().collect();
    let classes = exec.map(&prime_list, |r| mult_order(r, q));
    let mut vertices = Vec::with_capacity(prime_list.len() + 1);
    if mode == GraphMode::WithTwo {
        vertices.push(Vertex {
            prime: two.clone(),
            class: mult_order(&two, q)?.to_u64().expect("1 or 2"),
            is_two: true,
        });
    }
    for (r, e) in prime_list.iter().zip(classes) {
        vertices.push(Vertex {
            prime: r.clone(),
            class: e?.to_u64().ok_or_else(|| NumError::Domain("class overflows u64".into()))?,
            is_two: false,
        });
    }
    let n = vertices.len();
    let mut g = PrimeGraph {
        group,
        q: q.clone(),
        mode,
        vertices,
        adj: vec![Bits::empty(n); n],
        provenance: BTreeMap::new(),
        warnings: Vec::new(),
    };

    let orders = torus_orders(group, &field);
    let odd: Vec<usize> = (0..n).filter(|&i| !g.vertices[i].is_two).collect();
    let divisors_of = |t: &TorusOrder| -> Vec<(usize, u32)> {
        odd.iter()
            .filter_map(|&i| {
                let r = &g.vertices[i].prime;
                let mut x = t.order.clone();
                let mut k = 0;
                while (&x % r).is_zero() && k < 2 {
                    x /= r;
                    k += 1;
                }
                (k > 0).then_some((i, k))
            })
            .collect()
    };
    let per_torus = exec.map(&orders, divisors_of);
    for (t, divs) in orders.iter().zip(per_torus) {
        for (a, &(i, _)) in divs.iter().enumerate() {
            for &(j, _) in &divs[a + 1..] {
                g.add_edge(
                    i,
                    j,
                    EdgeProvenance::Torus {
                        row_id: t.row_id.to_string(),
                        eps: t.eps.to_string(),
                    },
                );
            }
        }
    }

    if mode == GraphMode::WithTwo {
        let rule = match group {
            Group::E7 => "2 is non-adjacent exactly to e(r, εq) ∈ {7, 9}, q ≡ −ε (mod 4)",
            Group::E8 => "2 is non-adjacent exactly to e(r, q) ∈ {15, 20, 24, 30}",
        };
        for i in odd.clone() {
            let v = &g.vertices[i];
            if !two_excluded(group, &field, &v.prime, v.class)? {
                g.add_edge(0, i, EdgeProvenance::Rule { rule: rule.to_string() });
            }
        }
    }

    g.warnings = flagged_only_primes(group, &field, &g)?;
    Ok(g)
}

/// Primes that occur only in the displays of flagged rows.
fn flagged_only_primes(group: Group, field: &FieldParam, g: &PrimeGraph) -> Result<Vec<String>, GraphError> {
    let mut seen: BTreeMap<BigInt, BTreeSet<String>> = BTreeMap::new();
    for shape in torus_catalog(group).iter().filter(|s| !s.is_valid()) {
        for eps in SignChoice::BOTH {
            let Ok(orders) = shape.display_orders(&field.q, eps) else {
                continue;
            };
            for x in orders.iter().filter(|x| !x.is_zero()) {
                for r in factorize(x)?.factors().keys() {
                    if r > &BigInt::from(2) && r != &field.p && g.index_of(r).is_none() {
                        seen.entry(r.clone()).or_default().insert(shape.row_id.clone());
                    }
                }
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|(r, rows)| {
            let rows: Vec<String> = rows.into_iter().collect();
            format!("{r} divides only flagged rows ({}); excluded", rows.join(", "))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocliqueResult {
    pub size: usize,
    #[serde(serialize_with = "export::ser_bigints")]
    pub witness: Vec<BigInt>,
    pub classes: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "export::ser_opt_bigint")]
    pub anchored_vertex: Option<BigInt>,
    /// Branch-and-bound nodes visited.
    pub nodes: u64,
}

fn result(g: &PrimeGraph, best: Vec<usize>, anchor: Option<BigInt>, nodes: u64) -> CocliqueResult {
    let mut best = best;
    best.sort_unstable();
    CocliqueResult {
        size: best.len(),
        witness: best.iter().map(|&i| g.vertices[i].prime.clone()).collect(),
        classes: best.iter().map(|&i| g.vertices[i].class).collect(),
        anchored_vertex: anchor,
        nodes,
    }
}

/// t(G): an exact maximum coclique.
pub fn independence_number(g: &PrimeGraph) -> CocliqueResult {
    let (best, nodes) = Solver::new(&g.adj).run(Vec::new(), Bits::full(g.len()));
    result(g, best, None, nodes)
}

/// t(r, G): an exact maximum coclique through r.
pub fn local_coclique(g: &PrimeGraph, r: &BigInt) -> Result<CocliqueResult, GraphError> {
    let i = g.index_of(r).ok_or_else(|| GraphError::NotAVertex(r.clone()))?;
    let mut cand = Bits::full(g.len()).and_not(&g.adj[i]);
    cand.remove(i);
    let (best, nodes) = Solver::new(&g.adj).run(vec![i], cand);
    Ok(result(g, best, Some(r.clone()), nodes))
}

/// A node of the compact form: one e-class, or the vertex 2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum ClassLabel {
    Two(&'static str),
    Class(u64),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Two(_) => write!(f, "2"),
            ClassLabel::Class(c) => write!(f, "R{c}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompactNode {
    pub label: ClassLabel,
    #[serde(serialize_with = "export::ser_bigints")]
    pub primes: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompactGraph {
    pub nodes: Vec<CompactNode>,
    pub edges: Vec<(usize, usize)>,
}

impl CompactGraph {
    pub fn labels(&self) -> Vec<ClassLabel> {
        self.nodes.iter().map(|n| n.label.clone()).collect()
    }

    pub fn adjacent(&self, a: &ClassLabel, b: &ClassLabel) -> bool {
        let pos = |l: &ClassLabel| self.nodes.iter().position(|n| &n.label == l);
        match (pos(a), pos(b)) {
            (Some(i), Some(j)) => self.edges.contains(&(i.min(j), i.max(j))),
            _ => false,
        }
    }
}

/// Quotient by e-class, after checking that each class is a clique with a
/// common neighbourhood.
pub fn compact_projection(g: &PrimeGraph) -> Result<CompactGraph, GraphError> {
    let mut groups: BTreeMap<ClassLabel, Vec<usize>> = BTreeMap::new();
    for (i, v) in g.vertices.iter().enumerate() {
        let label = if v.is_two {
            ClassLabel::Two("2")
        } else {
            ClassLabel::Class(v.class)
        };
        groups.entry(label).or_default().push(i);
    }
    let labels: Vec<ClassLabel> = groups.keys().cloned().collect();
    let members: Vec<&Vec<usize>> = groups.values().collect();
    let prime = |i: usize| &g.vertices[i].prime;
    for (a, ms) in members.iter().enumerate() {
        for (x, &i) in ms.iter().enumerate() {
            for &j in &ms[x + 1..] {
                if !g.adj[i].contains(j) {
                    return Err(GraphError::NonUniformClass {
                        class_a: labels[a].to_string(),
                        class_b: labels[a].to_string(),
                        detail: format!("{} and {} are not adjacent", prime(i), prime(j)),
                    });
                }
            }
        }
    }
    let mut edges = Vec::new();
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            let first = g.adj[members[a][0]].contains(members[b][0]);
            for &i in members[a].iter() {
                for &j in members[b].iter() {
                    if g.adj[i].contains(j) != first {
                        return Err(GraphError::NonUniformClass {
                            class_a: labels[a].to_string(),
                            class_b: labels[b].to_string(),
                            detail: format!(
                                "{}–{} {} but {}–{} {}",
                                prime(members[a][0]),
                                prime(members[b][0]),
                                if first { "adjacent" } else { "non-adjacent" },
                                prime(i),
                                prime(j),
                                if first { "non-adjacent" } else { "adjacent" },
                            ),
                        });
                    }
                }
            }
            if first {
                edges.push((a, b));
            }
        }
    }
    Ok(CompactGraph {
        nodes: labels
            .into_iter()
            .zip(members)
            .map(|(label, ms)| CompactNode {
                label,
                primes: ms.iter().map(|&i| prime(i).clone()).collect(),
            })
            .collect(),
        edges,
    })
}

/// Valid rows whose order at (q, ε) is divisible by n.
pub fn divisibility_witnesses(
    group: Group,
    q: &BigInt,
    eps: SignChoice,
    n: &BigInt,
) -> Result<Vec<(String, BigInt)>, GraphError> {
    if n <= &BigInt::zero() {
        return Err(NumError::Domain(format!("n must be positive, got {n}")).into());
    }
    let field = FieldParam::new(q)?;
    Ok(torus_orders(group, &field)
        .into_iter()
        .filter(|t| t.eps == eps && (&t.order % n).is_zero())
        .map(|t| (t.row_id.to_string(), t.order))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{euler_phi, greatest_primitive_divisor};

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn e7(q: i64, mode: GraphMode) -> PrimeGraph {
        build_graph(Group::E7, &b(q), mode).unwrap()
    }

    #[test]
    fn e7_q5_examples() {
        let g = e7(5, GraphMode::WithTwo);
        for v in g.vertices() {
            if !v.is_two {
                let expect = ![14, 18].contains(&v.class);
                assert_eq!(g.adjacent(&b(2), &v.prime).unwrap(), expect, "r = {}", v.prime);
            }
        }
        assert!(g.adjacent(&b(2), &b(3)).unwrap());
        assert_eq!(g.vertices()[g.index_of(&b(29)).unwrap()].class, 14);
        for v in g.vertices().iter().filter(|v| v.class == 18) {
            assert!(!g.adjacent(&b(29), &v.prime).unwrap());
        }
        assert!(g.index_of(&b(5)).is_none());
        assert!(matches!(
            g.provenance(&b(3), &b(13)),
            Some(EdgeProvenance::Torus { .. })
        ));
    }

    #[test]
    fn e7_q5_cocliques() {
        let g = e7(5, GraphMode::WithTwo);
        let t = independence_number(&g);
        assert_eq!(t.size, 8);
        let mut classes = t.classes.clone();
        classes.sort_unstable();
        classes.dedup();
        assert_eq!(classes.len(), 8);
        let t2 = local_coclique(&g, &b(2)).unwrap();
        assert_eq!(t2.size, 3);
        let mut c: Vec<u64> = t2.classes[1..].to_vec();
        c.sort_unstable();
        assert_eq!(c, vec![14, 18]);
        assert!(local_coclique(&g, &b(4)).is_err());
    }

    #[test]
    fn e7_q7_two_row() {
        let g = e7(7, GraphMode::WithTwo);
        let t2 = local_coclique(&g, &b(2)).unwrap();
        let mut c: Vec<u64> = t2.classes[1..].to_vec();
        c.sort_unstable();
        assert_eq!(c, vec![7, 9]);
    }

    #[test]
    fn with_two_requires_odd_q() {
        assert!(build_graph(Group::E7, &b(8), GraphMode::WithTwo).is_err());
        assert!(build_graph(Group::E7, &b(8), GraphMode::Semisimple).is_ok());
        assert!(build_graph(Group::E7, &b(6), GraphMode::Semisimple).is_err());
    }

    #[test]
    fn projection_is_uniform_and_small() {
        let g = e7(5, GraphMode::WithTwo);
        let c = compact_projection(&g).unwrap();
        assert!(c.nodes.len() <= 14);
        let r7 = c.nodes.iter().find(|n| n.label == ClassLabel::Class(7)).unwrap();
        assert!(!r7.primes.is_empty());
    }

    #[test]
    fn classes_of_large_total_degree_are_non_adjacent() {
        for q in [5, 7, 9, 11] {
            let g = e7(q, GraphMode::Semisimple);
            for (i, j) in g.edges() {
                let (a, c) = (g.vertices()[i].class, g.vertices()[j].class);
                if a != c {
                    assert!(euler_phi(a) + euler_phi(c) <= 7, "q={q}: classes {a} and {c}");
                }
            }
        }
    }

    #[test]
    fn divisibility_lemma_at_q5() {
        let eps = SignChoice::Minus;
        let k7 = greatest_primitive_divisor(&b(-5), 7).unwrap();
        let w = divisibility_witnesses(Group::E7, &b(5), eps, &k7).unwrap();
        assert_eq!(w.iter().map(|(r, _)| r.as_str()).collect::<Vec<_>>(), vec!["E7-19R"]);
        let k9 = greatest_primitive_divisor(&b(-5), 9).unwrap();
        let w = divisibility_witnesses(Group::E7, &b(5), eps, &k9).unwrap();
        assert_eq!(w.iter().map(|(r, _)| r.as_str()).collect::<Vec<_>>(), vec!["E7-01R"]);
        let all = divisibility_witnesses(Group::E7, &b(5), eps, &b(1)).unwrap();
        assert_eq!(all.len(), 37);
    }

    #[test]
    fn empty_and_isolated_graphs() {
        let g = PrimeGraph::from_parts(Group::E7, b(5), GraphMode::Semisimple, vec![], &[]).unwrap();
        assert_eq!(independence_number(&g).size, 0);
        let v = Vertex {
            prime: b(7),
            class: 6,
            is_two: false,
        };
        let g = PrimeGraph::from_parts(Group::E7, b(5), GraphMode::Semisimple, vec![v], &[]).unwrap();
        assert_eq!(local_coclique(&g, &b(7)).unwrap().size, 1);
        let c = compact_projection(&g).unwrap();
        assert_eq!(c.nodes.len(), 1);
        assert!(c.edges.is_empty());
    }

    #[test]
    fn flagged_row_primes_are_reported() {
        let g = e7(5, GraphMode::Semisimple);
        assert!(g.warnings().iter().all(|w| w.contains("E7-14R")));
    }

    #[test]
    fn deterministic_witnesses() {
        let a = independence_number(&e7(9, GraphMode::WithTwo));
        let b2 = independence_number(&build_graph_with(Group::E7, &b(9), GraphMode::WithTwo, Exec::Sequential).unwrap());
        assert_eq!(a.witness, b2.witness);
    }
}
