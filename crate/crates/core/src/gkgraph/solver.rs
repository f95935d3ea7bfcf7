// SPDX-License-Identifier: Apache-2.0

//! Exact maximum independent set by branch and bound.
//!
//! Vertices are branched in index order, include before exclude, and the
//! bound is a greedy partition of the candidates into cliques (an
//! independent set meets each clique at most once). A branch is cut when its
//! bound cannot beat the incumbent, so the first maximum found is the
//! lexicographically smallest one.

use super::bits::Bits;

pub(crate) struct Solver<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    nodes: u64,
}

impl<'a> Solver<'a> {
    pub fn new(adj: &'a [Bits]) -> Self {
        Self {
            adj,
            best: Vec::new(),
            nodes: 0,
        }
    }

    /// Largest independent set among `cand` extended by `seed`.
    pub fn run(mut self, seed: Vec<usize>, cand: Bits) -> (Vec<usize>, u64) {
        let mut current = seed;
        self.best = current.clone();
        self.search(&mut current, cand);
        (self.best, self.nodes)
    }

    fn clique_cover(&self, cand: &Bits) -> usize {
        let mut rest = cand.clone();
        let mut cliques = 0;
        while let Some(v) = rest.first() {
            cliques += 1;
            rest.remove(v);
            let mut pool = rest.and(&self.adj[v]);
            while let Some(u) = pool.first() {
                rest.remove(u);
                pool = pool.and(&self.adj[u]);
                pool.remove(u);
            }
        }
        cliques
    }

    fn search(&mut self, current: &mut Vec<usize>, cand: Bits) {
        self.nodes += 1;
        let Some(v) = cand.first() else {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return;
        };
        if current.len() + self.clique_cover(&cand) <= self.best.len() {
            return;
        }
        let mut without_v = cand.clone();
        without_v.remove(v);

        current.push(v);
        self.search(current, without_v.and_not(&self.adj[v]));
        current.pop();

        self.search(current, without_v);
    }
}
