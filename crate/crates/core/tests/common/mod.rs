//! Brute-force oracles shared by the integration tests. None of them call
//! into the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use alphadim::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

pub fn is_clique(adj: &[Vec<bool>], vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| adj[u][v]))
}

/// Minimum number of cliques over every set partition (restricted growth
/// strings).
pub fn min_clique_partition(adj: &[Vec<bool>]) -> usize {
    fn go(adj: &[Vec<bool>], v: usize, blocks: &mut Vec<Vec<usize>>, best: &mut usize) {
        if blocks.len() >= *best {
            return;
        }
        if v == adj.len() {
            *best = blocks.len();
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].iter().all(|&u| adj[u][v]) {
                blocks[b].push(v);
                go(adj, v + 1, blocks, best);
                blocks[b].pop();
            }
        }
        blocks.push(vec![v]);
        go(adj, v + 1, blocks, best);
        blocks.pop();
    }
    let mut best = adj.len();
    go(adj, 0, &mut Vec::new(), &mut best);
    best
}

/// Largest subset that is a clique (`want = true`) or independent set.
pub fn max_uniform_subset(adj: &[Vec<bool>], want: bool) -> usize {
    let n = adj.len();
    (0u32..1 << n)
        .filter(|&mask| {
            let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| adj[u][v] == want))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Vertices of `subset` grouped by equal closed neighborhoods in the whole
/// graph.
pub fn closed_classes(adj: &[Vec<bool>], subset: &[usize]) -> usize {
    let mut seen: BTreeMap<Vec<bool>, ()> = BTreeMap::new();
    for &u in subset {
        let mut row = adj[u].clone();
        row[u] = true;
        seen.insert(row, ());
    }
    seen.len()
}

pub fn bfs(adj: &[Vec<bool>], s: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; adj.len()];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for v in 0..adj.len() {
            if adj[u][v] && d[v].is_none() {
                d[v] = Some(d[u].unwrap() + 1);
                q.push_back(v);
            }
        }
    }
    d
}

/// Quotient adjacency after merging equal closed neighborhoods.
pub fn quotient(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let key = |u: usize| {
        let mut row = adj[u].clone();
        row[u] = true;
        row
    };
    let mut reps: Vec<usize> = Vec::new();
    for u in 0..n {
        if !reps.iter().any(|&r| key(r) == key(u)) {
            reps.push(u);
        }
    }
    reps.iter().map(|&a| reps.iter().map(|&b| adj[a][b]).collect()).collect()
}

/// Largest adjacency eigenvalue by power iteration on `A + I`.
pub fn top_eigenvalue(adj: &[Vec<bool>]) -> f64 {
    let n = adj.len();
    if n == 0 {
        return 0.0;
    }
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 * 1e-3).collect();
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + (0..n).filter(|&j| adj[i][j]).map(|j| x[j]).sum::<f64>())
            .collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let next: Vec<f64> = y.iter().map(|v| v / norm).collect();
        let rq: f64 = (0..n)
            .map(|i| next[i] * (0..n).filter(|&j| adj[i][j]).map(|j| next[j]).sum::<f64>())
            .sum();
        let done = (rq - lambda).abs() < 1e-15;
        lambda = rq;
        x = next;
        if done {
            break;
        }
    }
    lambda
}

/// Smallest `t ≥ 0` with `c^t ≥ k`.
pub fn int_log_ceil(k: usize, c: usize) -> usize {
    let mut t = 0;
    let mut p = 1usize;
    while p < k {
        p = p.saturating_mul(c);
        t += 1;
    }
    t
}

/// Small deterministic generator so oracles need no library RNG.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }

    pub fn normal(&mut self) -> f64 {
        let u = self.uniform().max(1e-300);
        let v = self.uniform();
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    }

    pub fn graph(&mut self, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if self.uniform() < p {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// `G(n, p)` with `p` itself drawn uniformly from `[lo, hi)`.
    pub fn graph_in(&mut self, n: usize, lo: f64, hi: f64) -> Graph {
        let p = lo + (hi - lo) * self.uniform();
        self.graph(n, p)
    }
}
