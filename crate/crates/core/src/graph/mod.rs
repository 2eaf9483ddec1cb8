//! Undirected simple graphs with packed bit-row adjacency.

mod generate;
mod io;
mod spectrum;

pub use generate::{gen_gnp, gen_kregular, gen_named, gen_planted_partition, Family};
pub use io::{read_edge_list, write_edge_list};
pub use spectrum::spectrum_top2;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bits::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
    blocks: Option<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Summary statistics used by the bound evaluators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphStats {
    /// `None` when the graph is disconnected.
    pub diameter: Option<usize>,
    pub max_degree: usize,
    pub lambda_max: f64,
    pub lambda_2: f64,
}

/// Result of contracting every neighborhood class of `C(G)` to one vertex.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: Graph,
    /// `part_of[v]` is the quotient vertex containing `v`.
    pub part_of: Vec<usize>,
    /// Lowest-index member of each part.
    pub representatives: Vec<usize>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: (0..n).map(|_| BitSet::new(n)).collect(),
            blocks: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    /// Builds a simple graph; duplicate and reversed pairs collapse to one edge.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn row(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    /// `N(v) ∪ {v}`.
    pub fn closed_row(&self, v: usize) -> BitSet {
        let mut r = self.rows[v].clone();
        r.insert(v);
        r
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Planted block label per vertex, when the graph came from a block model.
    pub fn blocks(&self) -> Option<&[usize]> {
        self.blocks.as_deref()
    }

    pub fn with_blocks(mut self, blocks: Vec<usize>) -> Result<Self> {
        if blocks.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "{} block labels for {} vertices",
                blocks.len(),
                self.n
            )));
        }
        self.blocks = Some(blocks);
        Ok(self)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            let mut r = BitSet::full(self.n);
            r.difference_with(&self.rows[u]);
            r.remove(u);
            g.rows[u] = r;
        }
        g
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge_unchecked(i, j);
                }
            }
        }
        g
    }

    /// Returns `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut degs = (0..self.n).map(|v| self.degree(v));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n).map(|s| self.bfs(s)).collect()
    }

    /// Exact diameter by all-pairs BFS; `None` iff disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp: Vec<usize> = self
                .bfs(s)
                .iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            comp.sort_unstable();
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Groups `vertices` by their closed neighborhood in this graph.
    /// Classes are ordered by smallest member; members ascend.
    pub fn closed_neighborhood_classes(&self, vertices: &[usize]) -> Vec<Vec<usize>> {
        let mut index: HashMap<BitSet, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        for v in sorted {
            let key = self.closed_row(v);
            match index.get(&key) {
                Some(&c) => classes[c].push(v),
                None => {
                    index.insert(key, classes.len());
                    classes.push(vec![v]);
                }
            }
        }
        classes
    }

    /// `G / C(G)`: one vertex per closed-neighborhood class, represented by its
    /// lowest-index member; parts adjacent iff their representatives are.
    pub fn quotient_by_neighborhood(&self) -> Quotient {
        let all: Vec<usize> = (0..self.n).collect();
        let classes = self.closed_neighborhood_classes(&all);
        let mut part_of = vec![0; self.n];
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                part_of[v] = c;
            }
        }
        let representatives: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let graph = self.induced(&representatives);
        Quotient {
            graph,
            part_of,
            representatives,
        }
    }

    pub fn stats(&self) -> GraphStats {
        let (lambda_max, lambda_2) = spectrum_top2(self);
        GraphStats {
            diameter: self.diameter(),
            max_degree: self.max_degree(),
            lambda_max,
            lambda_2,
        }
    }

    /// SHA-256 over the vertex count and the upper-triangular adjacency bits.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for (u, v) in self.edges() {
            h.update((u as u64).to_le_bytes());
            h.update((v as u64).to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    #[cfg(test)]
    pub(crate) fn assert_simple(&self) {
        for u in 0..self.n {
            assert!(!self.has_edge(u, u), "self-loop at {u}");
            for v in 0..self.n {
                assert_eq!(self.has_edge(u, v), self.has_edge(v, u));
            }
        }
        assert_eq!(self.degrees().iter().sum::<usize>(), 2 * self.edge_count());
    }
}
