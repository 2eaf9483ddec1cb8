use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::seed;

/// Restarts allowed before the pairing model gives up.
pub const KREGULAR_RESTARTS: usize = 1000;

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Erdős–Rényi `G(n, p)`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = seed::rng(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

/// Random `k`-regular graph from the pairing model, rejecting loops and
/// multi-edges by full restart.
pub fn gen_kregular(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if k >= n {
        return Err(Error::RegularInfeasible { n, k, reason: "k must be below n" });
    }
    if (n * k) % 2 == 1 {
        return Err(Error::RegularInfeasible { n, k, reason: "n*k is odd" });
    }
    let mut rng = seed::rng(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    'attempt: for _ in 0..KREGULAR_RESTARTS {
        stubs.shuffle(&mut rng);
        let mut g = Graph::empty(n);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.add_edge_unchecked(u, v);
        }
        return Ok(g);
    }
    Err(Error::RejectionBudget(KREGULAR_RESTARTS))
}

/// Planted partition model with contiguous blocks of the given sizes.
/// The block label of every vertex is attached to the returned graph.
pub fn gen_planted_partition(sizes: &[usize], p: f64, q: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    check_probability(q)?;
    if q > p {
        return Err(Error::InvalidParameter(format!("q = {q} exceeds p = {p}")));
    }
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidParameter("planted partition needs nonempty blocks".into()));
    }
    let labels: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
        .collect();
    let n = labels.len();
    let mut rng = seed::rng(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let prob = if labels[u] == labels[v] { p } else { q };
            if rng.random::<f64>() < prob {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    g.with_blocks(labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete,
    Empty,
    Star,
    Path,
    Cycle,
    CompleteBipartite,
    TwoCliquesMatched,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "complete" => Family::Complete,
            "empty" => Family::Empty,
            "star" => Family::Star,
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "complete_bipartite" => Family::CompleteBipartite,
            "two_cliques_matched" => Family::TwoCliquesMatched,
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        })
    }
}

pub fn gen_named(family: Family, n: usize) -> Result<Graph> {
    let bad = |why: &str| Err(Error::InvalidParameter(format!("{family:?} with n = {n}: {why}")));
    let mut g = Graph::empty(n);
    match family {
        Family::Complete => g = Graph::complete(n),
        Family::Empty => {}
        Family::Star => {
            if n == 0 {
                return bad("needs a center");
            }
            for v in 1..n {
                g.add_edge_unchecked(0, v);
            }
        }
        Family::Path => {
            for v in 1..n {
                g.add_edge_unchecked(v - 1, v);
            }
        }
        Family::Cycle => {
            if n < 3 {
                return bad("cycles need at least 3 vertices");
            }
            for v in 0..n {
                g.add_edge_unchecked(v, (v + 1) % n);
            }
        }
        Family::CompleteBipartite => {
            let half = n / 2;
            for u in 0..half {
                for v in half..n {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        Family::TwoCliquesMatched => {
            if n == 0 || n % 2 == 1 {
                return bad("needs a positive even vertex count");
            }
            let half = n / 2;
            for u in 0..half {
                for v in (u + 1)..half {
                    g.add_edge_unchecked(u, v);
                    g.add_edge_unchecked(u + half, v + half);
                }
                g.add_edge_unchecked(u, u + half);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes() {
        for s in 0..5 {
            assert_eq!(gen_gnp(9, 1.0, s).unwrap(), Graph::complete(9));
            assert_eq!(gen_gnp(9, 0.0, s).unwrap().edge_count(), 0);
        }
        assert!(matches!(gen_gnp(5, 1.5, 0), Err(Error::InvalidProbability(_))));
        assert!(matches!(gen_gnp(5, -0.1, 0), Err(Error::InvalidProbability(_))));
    }

    #[test]
    fn gnp_edge_count_matches_binomial_mean() {
        // 50 vertices, p = 1/2: 1225 pairs, mean 612.5, sd 17.5 per graph.
        let trials = 1000u64;
        let total: usize = (0..trials)
            .map(|s| gen_gnp(50, 0.5, seed::derive(11, s)).unwrap().edge_count())
            .sum();
        let mean = total as f64 / trials as f64;
        let sd_of_mean = 17.5 / (trials as f64).sqrt();
        assert!((mean - 612.5).abs() < 3.0 * sd_of_mean, "mean {mean}");
    }

    #[test]
    fn gnp_is_deterministic() {
        assert_eq!(gen_gnp(30, 0.3, 42).unwrap(), gen_gnp(30, 0.3, 42).unwrap());
        assert_ne!(gen_gnp(30, 0.3, 42).unwrap(), gen_gnp(30, 0.3, 43).unwrap());
    }

    #[test]
    fn kregular_examples() {
        for s in 0..5 {
            assert_eq!(gen_kregular(4, 3, s).unwrap(), Graph::complete(4));
            let m = gen_kregular(6, 1, s).unwrap();
            assert_eq!(m.edge_count(), 3);
            assert_eq!(m.regular_degree(), Some(1));
        }
        assert!(matches!(gen_kregular(5, 3, 0), Err(Error::RegularInfeasible { .. })));
        assert!(matches!(gen_kregular(4, 4, 0), Err(Error::RegularInfeasible { .. })));
    }

    #[test]
    fn kregular_degrees_are_exact() {
        for s in 0..20 {
            let g = gen_kregular(40, 3, s).unwrap();
            g.assert_simple();
            assert!(g.degrees().iter().all(|&d| d == 3));
        }
    }

    #[test]
    fn planted_examples() {
        let g = gen_planted_partition(&[3, 3], 1.0, 0.0, 1).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(g.blocks(), Some(&[0, 0, 0, 1, 1, 1][..]));
        assert_eq!(gen_planted_partition(&[2, 2], 1.0, 1.0, 1).unwrap().edge_count(), 6);
        // a single block draws exactly the same coins as G(n, p)
        let a = gen_planted_partition(&[20], 0.4, 0.4, 9).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), gen_gnp(20, 0.4, 9).unwrap().edges().collect::<Vec<_>>());
        assert!(gen_planted_partition(&[2, 2], 0.2, 0.5, 0).is_err());
        assert!(gen_planted_partition(&[2, 0], 0.5, 0.2, 0).is_err());
    }

    #[test]
    fn named_examples() {
        let star = gen_named(Family::Star, 5).unwrap();
        assert_eq!(star.degrees(), vec![4, 1, 1, 1, 1]);
        let tcm = gen_named(Family::TwoCliquesMatched, 10).unwrap();
        // 2 * C(5, 2) + 5
        assert_eq!(tcm.edge_count(), 2 * 10 + 5);
        let kb = gen_named(Family::CompleteBipartite, 8).unwrap();
        assert_eq!(kb.edge_count(), 16);
        assert_eq!(kb.regular_degree(), Some(4));
        assert!(gen_named(Family::TwoCliquesMatched, 7).is_err());
        assert!(gen_named(Family::Cycle, 2).is_err());
        for f in ["complete", "empty", "star", "path", "cycle", "complete_bipartite", "two_cliques_matched"] {
            gen_named(f.parse().unwrap(), 6).unwrap().assert_simple();
        }
    }
}
