//! Constructive α-preserving embeddings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{spectrum_top2, Graph};
use crate::metric::{ceil_log2, Distances, FiniteMetric, Norm, PointSet};
use crate::partition::{clique_cover_auto, VertexPartition};
use crate::preserve::{self, PreservationCertificate};
use crate::{seed, Limits};

pub const LOG2_3: f64 = 1.584_962_500_721_156_3;

/// Offset used to realize the α = 1 case as the α > 1 construction at
/// α = 1 + offset.
pub const ALPHA_ONE_OFFSET: f64 = 1e-6;

/// Sample budget per attempt and number of attempts for the ℓ₂ sphere packing.
pub const SPHERE_SAMPLES: usize = 100_000;
pub const SPHERE_ATTEMPTS: usize = 10;

/// Default number of projection attempts in [`jl_project`].
pub const JL_RETRIES: usize = 5;

/// Eigenvalues of the Gram matrix in `[-GRAM_TOL, 0)` are clipped to zero;
/// anything below `-GRAM_TOL` is rejected.
pub const GRAM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaInterval {
    pub lo: f64,
    #[serde(with = "crate::inf")]
    pub hi: f64,
    pub hi_inclusive: bool,
}

impl AlphaInterval {
    fn open(hi: f64) -> Self {
        AlphaInterval { lo: 0.0, hi, hi_inclusive: false }
    }

    fn up_to(hi: f64) -> Self {
        AlphaInterval { lo: 0.0, hi, hi_inclusive: true }
    }

    pub fn contains(&self, alpha: f64) -> bool {
        alpha > self.lo && (alpha < self.hi || (self.hi_inclusive && alpha == self.hi))
    }

    /// Points at which the claim is spot-checked: the midpoint and both
    /// endpoints pulled inward by `1e-9`.
    pub fn probes(&self) -> Vec<f64> {
        let hi = if self.hi.is_finite() { self.hi } else { self.lo + 4.0 };
        let mid = (self.lo + hi) / 2.0;
        let top = if self.hi_inclusive && self.hi.is_finite() { hi } else { hi - 1e-9 };
        vec![self.lo + 1e-9, mid, top]
    }
}

impl fmt::Display for AlphaInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let close = if self.hi_inclusive { ']' } else { ')' };
        write!(f, "({}, {}{close}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Points(PointSet),
    DistanceMatrix(FiniteMetric),
}

impl Distances for Target {
    fn len(&self) -> usize {
        match self {
            Target::Points(p) => p.len(),
            Target::DistanceMatrix(m) => m.len(),
        }
    }
    fn dist(&self, i: usize, j: usize) -> f64 {
        match self {
            Target::Points(p) => p.dist(i, j),
            Target::DistanceMatrix(m) => m.dist(i, j),
        }
    }
}

impl Target {
    pub fn metric(&self) -> FiniteMetric {
        match self {
            Target::Points(p) => crate::metric::induced_metric(p),
            Target::DistanceMatrix(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingResult {
    pub source: String,
    pub alpha_interval: AlphaInterval,
    /// Threshold the construction is designed around.
    pub r: f64,
    /// Coordinate dimension for point sets, doubling-dimension ceiling for
    /// finite metrics.
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doubling_bound: Option<u32>,
    pub vertex_map: Vec<usize>,
    #[serde(flatten)]
    pub target: Target,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, f64>,
}

impl EmbeddingResult {
    pub fn check(&self, g: &Graph, alpha: f64) -> Result<PreservationCertificate> {
        if self.vertex_map.len() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "embedding maps {} vertices, graph has {}",
                self.vertex_map.len(),
                g.n()
            )));
        }
        if let Some(&bad) = self.vertex_map.iter().find(|&&p| p >= self.target.len()) {
            return Err(Error::InvalidParameter(format!("vertex mapped to missing point {bad}")));
        }
        Ok(preserve::check(g, &self.vertex_map, &self.target, alpha)?.with_space(&self.source, self.dim))
    }

    pub fn alpha_max(&self, g: &Graph) -> f64 {
        preserve::alpha_max(g, &self.vertex_map, &self.target)
    }

    pub fn points(&self) -> Option<&PointSet> {
        match &self.target {
            Target::Points(p) => Some(p),
            Target::DistanceMatrix(_) => None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Smallest `c ≥ 1` with `c·step ≥ r`: the number of grid values `j·step`
/// lying strictly below `r`.
pub fn grid_values(r: f64, step: f64) -> usize {
    let mut c = ((r / step).ceil() as usize).max(1);
    while c > 1 && (c - 1) as f64 * step >= r {
        c -= 1;
    }
    while (c as f64) * step < r {
        c += 1;
    }
    c
}

/// `⌈1/x⌉` for a parameter given in decimal, tolerating a relative rounding
/// error of 1e-12 in `x` (so `1.2 − 1` yields 5, not 6).
pub fn ceil_recip(x: f64) -> usize {
    grid_values(1.0 - 1e-12, x)
}

/// Smallest `d ≥ 0` with `c^d ≥ k`, i.e. `⌈log k / log c⌉` in exact arithmetic.
pub fn grid_dim(k: usize, c: usize) -> usize {
    assert!(c >= 2 || k <= 1, "grid needs at least two values per axis");
    let mut d = 0;
    let mut cap: u128 = 1;
    while cap < k as u128 {
        cap = cap.saturating_mul(c as u128);
        d += 1;
    }
    d
}

/// Base-`c` digits of `j`, most significant first, padded to `d` digits.
fn digits(mut j: usize, c: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for slot in out.iter_mut().rev() {
        *slot = j % c;
        j /= c;
    }
    out
}

fn check_alpha(alpha: f64, lo: f64, hi: f64, what: &str) -> Result<()> {
    if alpha > lo && alpha < hi {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} needs alpha in ({lo}, {hi}), got {alpha}")))
    }
}

fn identity_map(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Shortest-path distances, with `2·(largest eccentricity) + 1` between
/// components.
pub fn shortest_path_distances(g: &Graph) -> FiniteMetric {
    let apd = g.all_pairs_distances();
    let max_ecc = apd.iter().flatten().flatten().copied().max().unwrap_or(0);
    let far = (2 * max_ecc + 1) as f64;
    FiniteMetric::from_fn(g.n(), false, |i, j| apd[i][j].map_or(far, |d| d as f64))
}

/// The graph's own shortest-path metric: neighbors at 1, non-neighbors at
/// 2 or more.
pub fn shortest_path_metric(g: &Graph) -> EmbeddingResult {
    EmbeddingResult {
        source: "spm".into(),
        alpha_interval: AlphaInterval::open(2.0),
        r: 1.0 + 1e-12,
        dim: ceil_log2(g.n().max(1)) as usize,
        doubling_bound: Some(ceil_log2(g.n().max(1))),
        vertex_map: identity_map(g.n()),
        target: Target::DistanceMatrix(shortest_path_distances(g)),
        diagnostics: BTreeMap::new(),
    }
}

/// The first `n` points of the grid `{eps·j : 0 ≤ j, j·eps < r}^d` in
/// lexicographic order, with `d = ⌈log n / log⌈r/eps⌉⌉` (at least 1).
pub fn grid_packing_linf(n: usize, r: f64, eps: f64) -> Result<PointSet> {
    if !(eps > 0.0 && eps < r) {
        return Err(Error::InvalidParameter(format!("grid packing needs 0 < eps < r, got eps = {eps}, r = {r}")));
    }
    let c = grid_values(r, eps);
    let d = grid_dim(n, c).max(1);
    Ok(grid_points(n, c, d, eps))
}

fn grid_points(n: usize, c: usize, d: usize, step: f64) -> PointSet {
    let points = (0..n)
        .map(|j| digits(j, c, d).into_iter().map(|x| x as f64 * step).collect())
        .collect();
    PointSet { points, dim: d, norm: Norm::Linf }
}

/// Every clique of `P(G)` collapsed to one point of an ℓ∞ grid packing with
/// spacing α inside the unit ball.
pub fn clique_collapse_linf(g: &Graph, alpha: f64, limits: &Limits) -> Result<EmbeddingResult> {
    check_alpha(alpha, 0.0, 1.0, "clique collapse")?;
    let p = clique_cover_auto(g, limits)?;
    let c = grid_values(1.0, alpha);
    let d = grid_dim(p.len(), c);
    let target = grid_points(p.len(), c, d, alpha);
    Ok(EmbeddingResult {
        source: "collapse".into(),
        alpha_interval: AlphaInterval::up_to(alpha),
        r: 1.0,
        dim: d,
        doubling_bound: Some((LOG2_3 * d as f64).ceil() as u32),
        vertex_map: p.block_of(g.n()),
        target: Target::Points(target),
        diagnostics: BTreeMap::from([("clique_partition".into(), p.len() as f64)]),
    })
}

/// Largest `ε ∈ (0, 1/2]` (to relative precision 1e-9) with
/// `⌈(1−ε)/(α−1+ε)⌉ = ⌈1/(α−1)⌉`.
pub fn prop6_epsilon(alpha: f64) -> f64 {
    let target = ceil_recip(alpha - 1.0);
    let ok = |e: f64| grid_values(1.0 - e, alpha - 1.0 + e) == target;
    if ok(0.5) {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0, 0.5);
    while hi - lo > 1e-9 * hi {
        let mid = (lo + hi) / 2.0;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Doubling-dimension ceiling of the pseudo-metric construction.
pub fn prop6_ceiling(partition_size: usize, max_classes: usize, alpha: f64) -> u32 {
    let c = ceil_recip(alpha - 1.0);
    let t = grid_dim(max_classes.max(1), c) as f64;
    ((partition_size as f64).log2() + LOG2_3 * t).ceil() as u32
}

/// Pseudo-metric for `α ∈ (1, 2)`: non-neighbors at α, neighbors in different
/// cliques of `P(G)` at `1−ε`, and within a clique the neighborhood classes on
/// an ℓ∞ grid of spacing `α−1+ε` and diameter below `1−ε`. Points at distance
/// zero are identified. `α = 1` is realized at `α = 1 + ALPHA_ONE_OFFSET`.
pub fn pseudo_metric_embedding(g: &Graph, alpha: f64, limits: &Limits) -> Result<EmbeddingResult> {
    if alpha == 1.0 {
        let p = clique_cover_auto(g, limits)?;
        let mut e = build_prop6(g, 1.0 + ALPHA_ONE_OFFSET, &p)?;
        let bound = ceil_log2(3 * p.len().max(1));
        e.alpha_interval = AlphaInterval::up_to(1.0 + ALPHA_ONE_OFFSET);
        e.dim = bound as usize;
        e.doubling_bound = Some(bound);
        return Ok(e);
    }
    check_alpha(alpha, 1.0, 2.0, "pseudo-metric construction")?;
    let p = clique_cover_auto(g, limits)?;
    build_prop6(g, alpha, &p)
}

fn build_prop6(g: &Graph, alpha: f64, p: &VertexPartition) -> Result<EmbeddingResult> {
    let n = g.n();
    let eps = prop6_epsilon(alpha);
    let step = alpha - 1.0 + eps;
    let c = grid_values(1.0 - eps, step);
    if c != ceil_recip(alpha - 1.0) || c < 2 {
        return Err(Error::Degenerate(format!("no valid epsilon for alpha = {alpha}")));
    }
    let block_of = p.block_of(n);
    let mut cell = vec![Vec::new(); n];
    let mut max_classes = 1;
    for block in &p.blocks {
        let classes = g.closed_neighborhood_classes(block);
        max_classes = max_classes.max(classes.len());
        let d = grid_dim(classes.len(), c);
        for (j, class) in classes.iter().enumerate() {
            let at = digits(j, c, d);
            for &v in class {
                cell[v] = at.clone();
            }
        }
    }
    let pseudo = FiniteMetric::from_fn(n, true, |u, v| {
        if !g.has_edge(u, v) {
            alpha
        } else if block_of[u] != block_of[v] {
            1.0 - eps
        } else {
            let gap = cell[u].iter().zip(&cell[v]).map(|(a, b)| a.abs_diff(*b)).max().unwrap_or(0);
            gap as f64 * step
        }
    });
    let (metric, vertex_map) = pseudo.identify_zero_distance();
    let bound = prop6_ceiling(p.len(), max_classes, alpha);
    Ok(EmbeddingResult {
        source: "prop6".into(),
        alpha_interval: AlphaInterval::up_to(alpha),
        r: 1.0 - eps / 2.0,
        dim: bound as usize,
        doubling_bound: Some(bound),
        vertex_map,
        target: Target::DistanceMatrix(metric),
        diagnostics: BTreeMap::from([
            ("epsilon".into(), eps),
            ("clique_partition".into(), p.len() as f64),
            ("max_neighborhood_classes".into(), max_classes as f64),
        ]),
    })
}

/// ℓ₂ dimension used by [`sphere_packing_l2`].
pub fn sphere_packing_dim(n: usize, r: f64, eps: f64) -> Result<usize> {
    let denom = 2.0 - (2.0 * eps / r).powi(2);
    if !(eps > 0.0 && eps < r) || denom <= 0.0 {
        return Err(Error::Domain {
            formula: "sphere packing dimension",
            reason: format!("needs 0 < eps/r < 1/sqrt(2), got eps = {eps}, r = {r}"),
        });
    }
    Ok(((4.0 * ((n + 1) as f64).ln() / denom).ceil() as usize).max(1))
}

/// `n` points pairwise at least `eps` apart inside the open ℓ₂ ball of
/// diameter `r`, by greedy packing of uniform samples on a sphere of radius
/// just under `r/2`.
pub fn sphere_packing_l2(n: usize, r: f64, eps: f64, seed: u64) -> Result<PointSet> {
    let d = sphere_packing_dim(n, r, eps)?;
    let radius = r / 2.0 * (1.0 - 1e-9);
    let mut best = 0;
    for attempt in 0..SPHERE_ATTEMPTS {
        let mut rng = seed::rng(seed::derive(seed, attempt as u64));
        let mut points: Vec<Vec<f64>> = Vec::with_capacity(n);
        for _ in 0..SPHERE_SAMPLES {
            if points.len() == n {
                break;
            }
            let mut x: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                continue;
            }
            x.iter_mut().for_each(|v| *v *= radius / norm);
            if points.iter().all(|p| Norm::L2.distance(p, &x) >= eps) {
                points.push(x);
            }
        }
        if points.len() == n {
            return Ok(PointSet { points, dim: d, norm: Norm::L2 });
        }
        best = best.max(points.len());
    }
    Err(Error::SampleBudget { achieved: best, requested: n })
}

/// Every clique of `P(G)` collapsed to one point of an ℓ₂ sphere packing with
/// spacing α in the unit ball, for `α < 1/√2`.
pub fn packing_collapse_l2(g: &Graph, alpha: f64, seed: u64, limits: &Limits) -> Result<EmbeddingResult> {
    check_alpha(alpha, 0.0, std::f64::consts::FRAC_1_SQRT_2, "l2 packing collapse")?;
    let p = clique_cover_auto(g, limits)?;
    let target = sphere_packing_l2(p.len(), 1.0, alpha, seed)?;
    Ok(EmbeddingResult {
        source: "l2-packing".into(),
        alpha_interval: AlphaInterval::up_to(alpha),
        r: 1.0,
        dim: target.dim,
        doubling_bound: None,
        vertex_map: p.block_of(g.n()),
        target: Target::Points(target),
        diagnostics: BTreeMap::new(),
    })
}

/// Distances to landmarks `1..n` as ℓ∞ coordinates; isometric for any metric.
fn frechet_points(m: &FiniteMetric) -> PointSet {
    let d = m.n.saturating_sub(1);
    let points = (0..m.n).map(|v| (1..m.n).map(|u| m.dist[v][u]).collect()).collect();
    PointSet { points, dim: d, norm: Norm::Linf }
}

/// Fréchet embedding of the shortest-path metric into ℓ∞^{n−1}.
pub fn frechet_embedding(g: &Graph) -> Result<EmbeddingResult> {
    let m = FiniteMetric::shortest_path(g)?;
    let target = frechet_points(&m);
    Ok(EmbeddingResult {
        source: "frechet".into(),
        alpha_interval: AlphaInterval::open(2.0),
        r: 1.0 + 1e-12,
        dim: target.dim,
        doubling_bound: Some((LOG2_3 * target.dim as f64).ceil() as u32),
        vertex_map: identity_map(g.n()),
        target: Target::Points(target),
        diagnostics: BTreeMap::new(),
    })
}

/// Fréchet embedding of `G / C(G)`, lifted to `V` through the class map.
/// A disconnected quotient uses the component-padded shortest-path metric.
pub fn frechet_quotient_embedding(g: &Graph) -> EmbeddingResult {
    let q = g.quotient_by_neighborhood();
    let target = frechet_points(&shortest_path_distances(&q.graph));
    let classes = q.graph.n();
    EmbeddingResult {
        source: "frechet-q".into(),
        alpha_interval: AlphaInterval::open(2.0),
        r: 1.0 + 1e-12,
        dim: target.dim,
        doubling_bound: Some((LOG2_3 * classes as f64).ceil() as u32),
        vertex_map: q.part_of,
        target: Target::Points(target),
        diagnostics: BTreeMap::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchoenbergDiagnostics {
    pub lambda: f64,
    pub min_gram_eigenvalue: f64,
    pub max_squared_distance_error: f64,
}

/// Classical MDS realization of `D = A^c + (1 − 1/λ)A` on `H = G / C(G)`,
/// placing non-neighbors at 1 and neighbors at `√(1 − 1/λ)`.
pub fn schoenberg_embedding(g: &Graph) -> Result<EmbeddingResult> {
    let q = g.quotient_by_neighborhood();
    let h = &q.graph;
    let k = h.n();
    let (lambda, _) = spectrum_top2(h);
    let has_edges = h.edge_count() > 0;
    let w = if has_edges { 1.0 - 1.0 / lambda } else { 0.0 };
    if has_edges && w <= 1e-12 {
        return Err(Error::Degenerate(format!("largest eigenvalue {lambda} leaves neighbors coincident")));
    }
    let d = DMatrix::from_fn(k, k, |i, j| match (i == j, h.has_edge(i, j)) {
        (true, _) => 0.0,
        (false, true) => w,
        (false, false) => 1.0,
    });
    let (points, min_eig) = classical_mds(&d)?;
    let dim = points.first().map_or(0, Vec::len);
    let max_err = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| {
            let sq: f64 = points[i].iter().zip(&points[j]).map(|(a, b)| (a - b) * (a - b)).sum();
            (sq - d[(i, j)]).abs()
        })
        .fold(0.0, f64::max);
    let alpha_max = if has_edges { w.powf(-0.5) } else { f64::INFINITY };
    Ok(EmbeddingResult {
        source: "schoenberg".into(),
        alpha_interval: AlphaInterval::open(alpha_max),
        r: if has_edges { w.sqrt() * (1.0 + 1e-12) } else { 0.5 },
        dim,
        doubling_bound: None,
        vertex_map: q.part_of,
        target: Target::Points(PointSet { points, dim, norm: Norm::L2 }),
        diagnostics: BTreeMap::from([
            ("lambda".into(), lambda),
            ("min_gram_eigenvalue".into(), min_eig),
            ("max_squared_distance_error".into(), max_err),
        ]),
    })
}

impl EmbeddingResult {
    /// Spectral diagnostics recorded by [`schoenberg_embedding`].
    pub fn schoenberg_diagnostics(&self) -> Option<SchoenbergDiagnostics> {
        Some(SchoenbergDiagnostics {
            lambda: *self.diagnostics.get("lambda")?,
            min_gram_eigenvalue: *self.diagnostics.get("min_gram_eigenvalue")?,
            max_squared_distance_error: *self.diagnostics.get("max_squared_distance_error")?,
        })
    }
}

/// Points realizing the squared-distance matrix `d`, one coordinate per
/// positive Gram eigenvalue (largest first), and the smallest eigenvalue.
fn classical_mds(d: &DMatrix<f64>) -> Result<(Vec<Vec<f64>>, f64)> {
    let k = d.nrows();
    if k <= 1 {
        return Ok((vec![Vec::new(); k], 0.0));
    }
    let centering = DMatrix::<f64>::identity(k, k) - DMatrix::from_element(k, k, 1.0 / k as f64);
    let b = &centering * d * &centering * -0.5;
    let eig = SymmetricEigen::new(b);
    let min_eig = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eig < -GRAM_TOL {
        return Err(Error::NotPsd(min_eig));
    }
    let mut order: Vec<usize> = (0..k).filter(|&i| eig.eigenvalues[i] > 1e-12).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let points = (0..k)
        .map(|i| {
            order
                .iter()
                .map(|&c| eig.eigenvectors[(i, c)] * eig.eigenvalues[c].sqrt())
                .collect()
        })
        .collect();
    Ok((points, min_eig))
}

/// Gaussian random projection of an ℓ₂ embedding to `d_target` coordinates
/// (entries `N(0,1)/√d_target`), retried with derived seeds until the result
/// α-preserves `g` at `alpha_target`. When `d_target` is at least the current
/// dimension the embedding is returned unchanged, after verification.
pub fn jl_project(
    emb: &EmbeddingResult,
    d_target: usize,
    g: &Graph,
    alpha_target: f64,
    seed: u64,
    retries: usize,
) -> Result<EmbeddingResult> {
    let Some(p) = emb.points().filter(|p| p.norm == Norm::L2) else {
        return Err(Error::InvalidParameter("projection needs an l2 point set".into()));
    };
    let relabel = |target: PointSet, dim: usize| EmbeddingResult {
        source: format!("jl({})", emb.source),
        alpha_interval: AlphaInterval::up_to(alpha_target),
        r: emb.r,
        dim,
        doubling_bound: None,
        vertex_map: emb.vertex_map.clone(),
        target: Target::Points(target),
        diagnostics: emb.diagnostics.clone(),
    };
    if d_target >= p.dim {
        let out = relabel(p.clone(), p.dim);
        let cert = out.check(g, alpha_target)?;
        return if cert.pass {
            Ok(out)
        } else {
            Err(Error::RetriesExhausted { retries: 0, best_alpha_max: cert.alpha_max })
        };
    }
    let scale = 1.0 / (d_target as f64).sqrt();
    let mut best = 0.0f64;
    for attempt in 0..retries {
        let mut rng = seed::rng(seed::derive(seed, attempt as u64));
        let proj: Vec<Vec<f64>> = (0..d_target)
            .map(|_| (0..p.dim).map(|_| rng.sample::<f64, _>(StandardNormal) * scale).collect())
            .collect();
        let points = p
            .points
            .iter()
            .map(|x| proj.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect())
            .collect();
        let mut out = relabel(PointSet { points, dim: d_target, norm: Norm::L2 }, d_target);
        let cert = out.check(g, alpha_target)?;
        if cert.pass {
            out.diagnostics.insert("jl_attempt".into(), attempt as f64);
            return Ok(out);
        }
        best = best.max(cert.alpha_max);
    }
    Err(Error::RetriesExhausted { retries, best_alpha_max: best })
}

/// Target dimension `⌈12 ln m / ε²⌉` for `ε = (1−α²)/(1+α²)`.
pub fn simplex_jl_dim(m: usize, alpha: f64) -> usize {
    let eps = (1.0 - alpha * alpha) / (1.0 + alpha * alpha);
    (12.0 * (m.max(1) as f64).ln() / (eps * eps)).ceil() as usize
}

/// Cliques of `P(G)` sent to the vertices of a regular unit simplex (scaled
/// standard basis), then projected with [`jl_project`].
pub fn simplex_embedding(
    g: &Graph,
    alpha: f64,
    seed: u64,
    retries: usize,
    limits: &Limits,
) -> Result<EmbeddingResult> {
    check_alpha(alpha, 1.0 / 3f64.sqrt(), 1.0, "simplex embedding")?;
    let p = clique_cover_auto(g, limits)?;
    let m = p.len();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let points = (0..m)
        .map(|i| (0..m).map(|j| if i == j { s } else { 0.0 }).collect())
        .collect();
    let base = EmbeddingResult {
        source: "simplex".into(),
        alpha_interval: AlphaInterval::up_to(alpha),
        r: 1.0,
        dim: m,
        doubling_bound: None,
        vertex_map: p.block_of(g.n()),
        target: Target::Points(PointSet { points, dim: m, norm: Norm::L2 }),
        diagnostics: BTreeMap::from([("clique_partition".into(), m as f64)]),
    };
    let mut out = jl_project(&base, simplex_jl_dim(m, alpha), g, alpha, seed, retries)?;
    out.source = "simplex-jl".into();
    Ok(out)
}

/// Translate the centroid to the origin and divide by `r`.
pub fn center_and_normalize(p: &PointSet, r: f64) -> Result<PointSet> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Degenerate(format!("cannot normalize by threshold {r}")));
    }
    let n = p.points.len();
    if n == 0 {
        return Ok(p.clone());
    }
    let centroid: Vec<f64> = (0..p.dim)
        .map(|k| p.points.iter().map(|x| x[k]).sum::<f64>() / n as f64)
        .collect();
    let points = p
        .points
        .iter()
        .map(|x| x.iter().zip(&centroid).map(|(a, c)| (a - c) / r).collect())
        .collect();
    Ok(PointSet { points, dim: p.dim, norm: p.norm })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Spm,
    Collapse,
    Prop6,
    Frechet,
    FrechetQ,
    Schoenberg,
    SimplexJl,
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "spm" => Construction::Spm,
            "collapse" => Construction::Collapse,
            "prop6" => Construction::Prop6,
            "frechet" => Construction::Frechet,
            "frechet-q" => Construction::FrechetQ,
            "schoenberg" => Construction::Schoenberg,
            "simplex-jl" => Construction::SimplexJl,
            other => return Err(Error::InvalidParameter(format!("unknown construction {other:?}"))),
        })
    }
}

impl Construction {
    pub fn build(self, g: &Graph, alpha: f64, seed: u64, limits: &Limits) -> Result<EmbeddingResult> {
        match self {
            Construction::Spm => Ok(shortest_path_metric(g)),
            Construction::Collapse => clique_collapse_linf(g, alpha, limits),
            Construction::Prop6 => pseudo_metric_embedding(g, alpha, limits),
            Construction::Frechet => frechet_embedding(g),
            Construction::FrechetQ => Ok(frechet_quotient_embedding(g)),
            Construction::Schoenberg => schoenberg_embedding(g),
            Construction::SimplexJl => simplex_embedding(g, alpha, seed, JL_RETRIES, limits),
        }
    }
}
