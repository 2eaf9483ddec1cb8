//! Verification of α-preservation for a concrete embedding.
//!
//! With `M` the largest neighbor distance and `m` the smallest non-neighbor
//! distance, a threshold exists exactly when `m > α·M`, so the supremal
//! feasible α is `m / M`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::Distances;

/// Relative slack applied to `α·M` in the pass condition. It can only turn a
/// pass into a fail.
pub const PASS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub source: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreservationCertificate {
    pub graph_digest: String,
    pub space: SpaceDescriptor,
    /// Witness threshold; present exactly when the check passes.
    pub r: Option<f64>,
    pub max_neighbor: f64,
    #[serde(with = "crate::inf")]
    pub min_non_neighbor: f64,
    #[serde(with = "crate::inf")]
    pub alpha_max: f64,
    pub requested_alpha: f64,
    pub pass: bool,
}

impl PreservationCertificate {
    pub fn with_space(mut self, source: impl Into<String>, dim: usize) -> Self {
        self.space = SpaceDescriptor { source: source.into(), dim };
        self
    }
}

/// Pairwise summary of an embedding: largest neighbor distance, smallest
/// non-neighbor distance, and every distinct pair distance in sorted order.
struct Scan {
    max_neighbor: f64,
    min_non_neighbor: f64,
    distances: Vec<f64>,
}

fn scan<D: Distances + ?Sized>(g: &Graph, map: &[usize], d: &D) -> Scan {
    assert_eq!(map.len(), g.n(), "vertex map must be total");
    let mut max_neighbor = 0.0f64;
    let mut min_non_neighbor = f64::INFINITY;
    let mut distances = Vec::new();
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            let x = d.dist(map[u], map[v]);
            if g.has_edge(u, v) {
                max_neighbor = max_neighbor.max(x);
            } else {
                min_non_neighbor = min_non_neighbor.min(x);
            }
            distances.push(x);
        }
    }
    distances.sort_by(f64::total_cmp);
    distances.dedup();
    Scan { max_neighbor, min_non_neighbor, distances }
}

fn ratio(m: f64, big_m: f64) -> f64 {
    if big_m == 0.0 {
        if m > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        m / big_m
    }
}

/// Supremal α for which `map` α-preserves `g` (not itself attained).
pub fn alpha_max<D: Distances + ?Sized>(g: &Graph, map: &[usize], d: &D) -> f64 {
    let s = scan(g, map, d);
    ratio(s.min_non_neighbor, s.max_neighbor)
}

/// Check α-preservation and record a witness threshold on success.
pub fn check<D: Distances + ?Sized>(
    g: &Graph,
    map: &[usize],
    d: &D,
    alpha: f64,
) -> Result<PreservationCertificate> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha must be positive and finite, got {alpha}")));
    }
    let s = scan(g, map, d);
    let (big_m, m) = (s.max_neighbor, s.min_non_neighbor);
    let pass = m > alpha * big_m * (1.0 + PASS_SLACK) && m > 0.0;
    let r = pass.then(|| {
        let next = s.distances.iter().copied().find(|&x| x > big_m).unwrap_or(f64::INFINITY);
        let upper = (m / alpha).min(next);
        if upper.is_finite() {
            (big_m + upper) / 2.0
        } else if big_m > 0.0 {
            2.0 * big_m
        } else {
            1.0
        }
    });
    Ok(PreservationCertificate {
        graph_digest: g.digest(),
        space: SpaceDescriptor { source: String::new(), dim: 0 },
        r,
        max_neighbor: big_m,
        min_non_neighbor: m,
        alpha_max: ratio(m, big_m),
        requested_alpha: alpha,
        pass,
    })
}

/// True iff every connected component is a clique, which is exactly when an
/// α-preserving map exists for α ≥ 2.
pub fn alpha2_feasible(g: &Graph) -> bool {
    g.components().iter().all(|c| g.is_clique(c))
}

/// Distortion of the embedding against the shortest-path metric:
/// (largest ratio of embedded to path distance) / (smallest such ratio).
pub fn measured_distortion<D: Distances + ?Sized>(g: &Graph, map: &[usize], d: &D) -> Result<f64> {
    let apd = g.all_pairs_distances();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            let path = apd[u][v].ok_or(Error::Disconnected)? as f64;
            let q = d.dist(map[u], map[v]) / path;
            lo = lo.min(q);
            hi = hi.max(q);
        }
    }
    Ok(match (lo.is_finite(), lo > 0.0) {
        (false, _) => 1.0,
        (true, true) => hi / lo,
        (true, false) => f64::INFINITY,
    })
}
