//! Clique partitions `P(G)`, neighborhood partitions `C(G)`, clique and
//! independence numbers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Greedy,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "greedy" => Ok(Mode::Greedy),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPartition {
    pub blocks: Vec<Vec<usize>>,
    pub mode: Mode,
}

impl VertexPartition {
    fn normalized(mut blocks: Vec<Vec<usize>>, mode: Mode) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by_key(|b| b[0]);
        VertexPartition { blocks, mode }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `block_of()[v]` is the index of the block containing `v`.
    pub fn block_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                out[v] = i;
            }
        }
        out
    }

    /// Blocks are disjoint, nonempty, and cover exactly `0..n`.
    pub fn covers(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for b in &self.blocks {
            if b.is_empty() {
                return false;
            }
            for &v in b {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_clique_partition(&self, g: &Graph) -> bool {
        self.covers(g.n()) && self.blocks.iter().all(|b| g.is_clique(b))
    }
}

impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            let members: Vec<String> = b.iter().map(usize::to_string).collect();
            writeln!(f, "block_{i}: {}", members.join(" "))?;
        }
        Ok(())
    }
}

/// Minimum (exact) or greedy partition of the vertices into cliques.
pub fn clique_cover(g: &Graph, mode: Mode, limits: &Limits) -> Result<VertexPartition> {
    match mode {
        Mode::Greedy => Ok(greedy_clique_cover(g)),
        Mode::Exact => {
            if g.n() > limits.clique_cover_exact {
                return Err(Error::SizeLimit {
                    what: "exact clique cover",
                    size: g.n(),
                    limit: limits.clique_cover_exact,
                });
            }
            let colors = exact_coloring(&g.complement(), limits.search_nodes)?;
            let k = colors.iter().copied().max().map_or(0, |c| c + 1);
            let mut blocks = vec![Vec::new(); k];
            for (v, &c) in colors.iter().enumerate() {
                blocks[c].push(v);
            }
            Ok(VertexPartition::normalized(blocks, Mode::Exact))
        }
    }
}

/// Exact cover when `n` is within the limit, greedy otherwise.
pub fn clique_cover_auto(g: &Graph, limits: &Limits) -> Result<VertexPartition> {
    if g.n() <= limits.clique_cover_exact {
        clique_cover(g, Mode::Exact, limits)
    } else {
        clique_cover(g, Mode::Greedy, limits)
    }
}

/// Extend `start` to a maximal clique inside `allowed`, always adding the
/// candidate with the most candidate neighbors (lowest index on ties).
fn greedy_extend(g: &Graph, start: usize, allowed: &BitSet) -> Vec<usize> {
    let mut clique = vec![start];
    let mut cand = g.row(start).intersection(allowed);
    while !cand.is_empty() {
        let u = cand
            .iter()
            .max_by_key(|&u| (g.row(u).intersection_count(&cand), std::cmp::Reverse(u)))
            .unwrap();
        clique.push(u);
        cand.intersect_with(g.row(u));
    }
    clique
}

fn greedy_clique_cover(g: &Graph) -> VertexPartition {
    let mut remaining = BitSet::full(g.n());
    let mut blocks = Vec::new();
    while let Some(first) = remaining.first() {
        let start = remaining
            .iter()
            .max_by_key(|&v| (g.row(v).intersection_count(&remaining), std::cmp::Reverse(v)))
            .unwrap_or(first);
        let clique = greedy_extend(g, start, &remaining);
        for &v in &clique {
            remaining.remove(v);
        }
        blocks.push(clique);
    }
    VertexPartition::normalized(blocks, Mode::Greedy)
}

/// Number of colors used by sequential greedy coloring in index order; an
/// upper bound on the clique number.
pub fn greedy_coloring_count(g: &Graph) -> usize {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut used = 0;
    for v in 0..n {
        let mut taken = vec![false; used + 1];
        for u in g.neighbors(v) {
            if color[u] != usize::MAX {
                taken[color[u]] = true;
            }
        }
        let c = taken.iter().position(|t| !t).unwrap();
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

struct Dsatur<'a> {
    g: &'a Graph,
    color: Vec<usize>,
    /// `adjacent_colors[v][c]` counts colored neighbors of `v` with color `c`.
    adjacent_colors: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: Vec<usize>,
    best_k: usize,
    lower: usize,
    nodes: u64,
    budget: u64,
}

const UNCOLORED: usize = usize::MAX;

impl Dsatur<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for u in self.g.neighbors(v) {
            let cnt = &mut self.adjacent_colors[u][c];
            if *cnt == 0 {
                self.saturation[u] += 1;
            }
            *cnt += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = UNCOLORED;
        for u in self.g.neighbors(v) {
            let cnt = &mut self.adjacent_colors[u][c];
            *cnt -= 1;
            if *cnt == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    /// Uncolored vertex with maximum saturation, then maximum uncolored
    /// degree, then lowest index.
    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.color[v] == UNCOLORED)
            .max_by_key(|&v| {
                let free_deg = self.g.neighbors(v).filter(|&u| self.color[u] == UNCOLORED).count();
                (self.saturation[v], free_deg, std::cmp::Reverse(v))
            })
    }

    fn search(&mut self, used: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudget(self.budget));
        }
        let Some(v) = self.pick() else {
            if used < self.best_k {
                self.best_k = used;
                self.best = self.color.clone();
            }
            return Ok(());
        };
        for c in 0..used {
            if self.adjacent_colors[v][c] == 0 {
                self.assign(v, c);
                self.search(used)?;
                self.unassign(v);
                if self.best_k <= self.lower {
                    return Ok(());
                }
            }
        }
        if used + 1 < self.best_k {
            self.assign(v, used);
            self.search(used + 1)?;
            self.unassign(v);
        }
        Ok(())
    }
}

/// Optimal vertex coloring by DSATUR branch-and-bound, seeded with a maximum
/// clique (its vertices receive distinct colors without loss of generality).
fn exact_coloring(g: &Graph, budget: u64) -> Result<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let clique = max_clique(g, budget)?;
    let mut state = Dsatur {
        g,
        color: vec![UNCOLORED; n],
        adjacent_colors: vec![vec![0; n + 1]; n],
        saturation: vec![0; n],
        best: Vec::new(),
        best_k: n + 1,
        lower: clique.len(),
        nodes: 0,
        budget,
    };
    // incumbent: the identity coloring is always valid
    state.best = (0..n).collect();
    state.best_k = n;
    for (c, &v) in clique.iter().enumerate() {
        state.assign(v, c);
    }
    if state.best_k > state.lower {
        state.search(clique.len())?;
    }
    Ok(state.best)
}

/// Sequential greedy coloring of `p` used as the pruning bound; returns the
/// vertices in coloring order with their cumulative color numbers.
fn color_sort(g: &Graph, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(p.count());
    let mut bounds = Vec::with_capacity(order.capacity());
    let mut uncolored = p.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(g.row(v));
            uncolored.remove(v);
            order.push(v);
            bounds.push(color);
        }
    }
    (order, bounds)
}

fn expand(
    g: &Graph,
    current: &mut Vec<usize>,
    mut p: BitSet,
    best: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::SearchBudget(budget));
    }
    let (order, bounds) = color_sort(g, &p);
    for i in (0..order.len()).rev() {
        if current.len() + bounds[i] <= best.len() {
            return Ok(());
        }
        let v = order[i];
        current.push(v);
        let next = p.intersection(g.row(v));
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(g, current, next, best, nodes, budget)?;
        }
        current.pop();
        p.remove(v);
    }
    Ok(())
}

/// A maximum clique, by branch-and-bound with greedy-coloring bounds.
pub fn max_clique(g: &Graph, budget: u64) -> Result<Vec<usize>> {
    let mut best = Vec::new();
    if g.n() == 0 {
        return Ok(best);
    }
    let mut nodes = 0;
    expand(g, &mut Vec::new(), BitSet::full(g.n()), &mut best, &mut nodes, budget)?;
    best.sort_unstable();
    Ok(best)
}

fn greedy_max_clique(g: &Graph) -> Vec<usize> {
    let all = BitSet::full(g.n());
    (0..g.n())
        .map(|v| greedy_extend(g, v, &all))
        .max_by_key(|c| c.len())
        .unwrap_or_default()
}

/// `|κ(G)|`; the greedy mode returns a lower bound.
pub fn clique_number(g: &Graph, mode: Mode, limits: &Limits) -> Result<usize> {
    match mode {
        Mode::Exact => Ok(max_clique(g, limits.search_nodes)?.len()),
        Mode::Greedy => Ok(greedy_max_clique(g).len()),
    }
}

/// `|ι(G)|`, computed as the clique number of the complement.
pub fn independence_number(g: &Graph, mode: Mode, limits: &Limits) -> Result<usize> {
    clique_number(&g.complement(), mode, limits)
}

/// `C(G)`: vertices grouped by identical closed neighborhoods.
pub fn neighborhood_partition(g: &Graph) -> VertexPartition {
    let all: Vec<usize> = (0..g.n()).collect();
    neighborhood_partition_of(g, &all)
}

/// `C(G|_U)`: vertices of `U` grouped by their closed neighborhoods in the
/// whole graph `G`.
pub fn neighborhood_partition_of(g: &Graph, subset: &[usize]) -> VertexPartition {
    VertexPartition::normalized(g.closed_neighborhood_classes(subset), Mode::Exact)
}
