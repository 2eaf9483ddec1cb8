//! Lower and upper bounds on the α-preservation dimension `dim_α(G)`, the
//! smallest doubling dimension of a metric space admitting an α-preserving
//! map of `G`.
//!
//! Per-graph lower bounds come from packing arguments over vertex subsets;
//! upper bounds are the dimensions of explicit constructions. The theorem
//! formulas are evaluated separately: they describe typical random graphs,
//! not a given one.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{
    self, ceil_recip, prop6_ceiling, EmbeddingResult, ALPHA_ONE_OFFSET, JL_RETRIES, LOG2_3,
};
use crate::error::{Error, Result};
use crate::graph::{spectrum_top2, Graph};
use crate::metric::ceil_log2;
use crate::partition::{
    clique_cover, clique_cover_auto, greedy_coloring_count, independence_number, max_clique,
    neighborhood_partition, neighborhood_partition_of, Mode, VertexPartition,
};
use crate::preserve::alpha2_feasible;
use crate::{seed, Limits};

pub const LOG2_5: f64 = std::f64::consts::LOG2_10 - 1.0;

/// Node budget for the clique search behind the certified `|P|` lower bound
/// on subsets too large for an exact cover.
const KAPPA_BUDGET: u64 = 200_000;

/// Candidate vertex subsets for the subset-maximum lower bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetStrategy {
    /// BFS balls of every radius `1..=max_radius` around every vertex.
    pub max_radius: usize,
    pub components: bool,
    pub extra: Vec<Vec<usize>>,
}

impl Default for SubsetStrategy {
    fn default() -> Self {
        SubsetStrategy { max_radius: 3, components: true, extra: Vec::new() }
    }
}

impl SubsetStrategy {
    fn candidates(&self, g: &Graph) -> Vec<Vec<usize>> {
        let mut set = BTreeSet::new();
        if self.components {
            set.extend(g.components());
        }
        if self.max_radius > 0 {
            for v in 0..g.n() {
                let dist = g.bfs(v);
                for r in 1..=self.max_radius {
                    let ball: Vec<usize> = (0..g.n()).filter(|&u| dist[u].is_some_and(|d| d <= r)).collect();
                    set.insert(ball);
                }
            }
        }
        for u in &self.extra {
            let mut u: Vec<usize> = u.iter().copied().filter(|&v| v < g.n()).collect();
            u.sort_unstable();
            u.dedup();
            set.insert(u);
        }
        set.into_iter().filter(|u| u.len() >= 2).collect()
    }
}

/// The best subset found for a subset-maximum bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetBound {
    #[serde(with = "crate::inf")]
    pub value: f64,
    /// Maximizing subset; empty when no candidate qualified.
    pub subset: Vec<usize>,
    /// Partition size used in the numerator (a certified lower bound when
    /// `exact` is false).
    pub parts: usize,
    pub diameter: usize,
    pub exact: bool,
}

impl SubsetBound {
    fn none() -> Self {
        SubsetBound { value: f64::NEG_INFINITY, subset: Vec::new(), parts: 0, diameter: 0, exact: true }
    }
}

fn check_open(alpha: f64, lo: f64, hi: f64, formula: &'static str) -> Result<()> {
    if alpha > lo && alpha < hi {
        Ok(())
    } else {
        Err(Error::Domain { formula, reason: format!("alpha = {alpha} outside ({lo}, {hi})") })
    }
}

/// `|P(H)|` exactly when small, else `max(ι, ⌈n/κ⌉)` with a lower estimate of
/// ι and an upper estimate of κ.
fn clique_partition_lower(h: &Graph, limits: &Limits) -> Result<(usize, bool)> {
    if h.n() <= limits.clique_cover_exact {
        return Ok((clique_cover(h, Mode::Exact, limits)?.len(), true));
    }
    let iota = independence_number(h, Mode::Greedy, limits)?;
    let kappa = match max_clique(h, KAPPA_BUDGET) {
        Ok(c) => c.len(),
        Err(_) => greedy_coloring_count(h),
    };
    Ok((iota.max(h.n().div_ceil(kappa.max(1))), false))
}

fn subset_max<F>(g: &Graph, strategy: &SubsetStrategy, denom_scale: f64, parts: F) -> Result<SubsetBound>
where
    F: Fn(&Graph, &[usize]) -> Result<(usize, bool)> + Sync,
{
    let found: Vec<SubsetBound> = strategy
        .candidates(g)
        .into_par_iter()
        .map(|u| -> Result<Option<SubsetBound>> {
            let h = g.induced(&u);
            let Some(diameter) = h.diameter() else {
                return Ok(None);
            };
            let (k, exact) = parts(&h, &u)?;
            let value = (k as f64).ln() / (4.0 * diameter as f64 / denom_scale).ln();
            Ok(Some(SubsetBound { value, subset: u, parts: k, diameter, exact }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(found
        .into_iter()
        .fold(SubsetBound::none(), |best, b| if b.value > best.value { b } else { best }))
}

/// `max_U ln|P(G|_U)| / ln(4Δ(G|_U)/α)` over the strategy's connected
/// candidates with at least two vertices; `−∞` when there are none.
pub fn lower_clique_partition(
    g: &Graph,
    alpha: f64,
    strategy: &SubsetStrategy,
    limits: &Limits,
) -> Result<SubsetBound> {
    check_open(alpha, 0.0, 2.0, "clique-partition lower bound")?;
    subset_max(g, strategy, alpha, |h, _| clique_partition_lower(h, limits))
}

/// `max_U ln|C(G|_U)| / ln(4Δ(G|_U)/(α−1))` for `α ∈ (1, 2)`, with classes
/// taken by closed neighborhoods in all of `G`.
pub fn lower_neighborhood(g: &Graph, alpha: f64, strategy: &SubsetStrategy) -> Result<SubsetBound> {
    check_open(alpha, 1.0, 2.0, "neighborhood-partition lower bound")?;
    subset_max(g, strategy, alpha - 1.0, |_, u| Ok((neighborhood_partition_of(g, u).len(), true)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    /// Doubling dimension of the target space.
    Doubling,
    /// Coordinate dimension of a Euclidean target.
    L2Dim,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub tag: String,
    #[serde(with = "crate::inf")]
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SubsetBound>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperBound {
    pub tag: String,
    pub value: f64,
    pub constructive: bool,
    pub measure: Measure,
    /// Outcome of building the construction and checking it; absent when
    /// not attempted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Omitted {
    pub tag: String,
    pub reason: String,
}

/// Graph quantities shared by the upper-bound formulas.
struct Profile {
    n: usize,
    partition: VertexPartition,
    /// Largest `|C(G|_S)|` over the cliques `S` of `partition`.
    max_classes: usize,
    classes: usize,
    lambda: f64,
    connected: bool,
    regular: Option<usize>,
}

impl Profile {
    fn new(g: &Graph, limits: &Limits) -> Result<Self> {
        let partition = clique_cover_auto(g, limits)?;
        let max_classes = partition
            .blocks
            .iter()
            .map(|s| neighborhood_partition_of(g, s).len())
            .max()
            .unwrap_or(0);
        let q = g.quotient_by_neighborhood();
        Ok(Profile {
            n: g.n(),
            max_classes,
            classes: q.graph.n(),
            lambda: spectrum_top2(&q.graph).0,
            connected: g.is_connected(),
            regular: g.regular_degree(),
            partition,
        })
    }

    fn p(&self) -> usize {
        self.partition.len()
    }
}

/// How to build the embedding behind a constructive upper bound.
#[derive(Debug, Clone, Copy)]
enum Builder {
    Spm,
    Collapse(f64),
    Prop6(f64),
    FrechetQ,
    Frechet,
    PackingL2(f64),
    Simplex(f64),
    SchoenbergJl(usize),
}

impl Builder {
    fn build(self, g: &Graph, alpha: f64, seed: u64, limits: &Limits) -> Result<EmbeddingResult> {
        match self {
            Builder::Spm => Ok(construct::shortest_path_metric(g)),
            Builder::Collapse(a) => construct::clique_collapse_linf(g, a, limits),
            Builder::Prop6(a) => construct::pseudo_metric_embedding(g, a, limits),
            Builder::FrechetQ => Ok(construct::frechet_quotient_embedding(g)),
            Builder::Frechet => construct::frechet_embedding(g),
            Builder::PackingL2(a) => construct::packing_collapse_l2(g, a, seed, limits),
            Builder::Simplex(a) => construct::simplex_embedding(g, a, seed, JL_RETRIES, limits),
            Builder::SchoenbergJl(d) => {
                let e = construct::schoenberg_embedding(g)?;
                construct::jl_project(&e, d.max(1), g, alpha, seed, JL_RETRIES)
            }
        }
    }
}

struct Candidate {
    bound: UpperBound,
    builder: Option<Builder>,
}

fn ceil(x: f64) -> f64 {
    x.ceil().max(0.0)
}

/// Evaluated upper-bound formulas at α together with the formulas that do
/// not apply. For α ≤ 1 the formulas stated for α' ∈ [1, 2) are included
/// too, since preserving at α' implies preserving at any smaller α.
fn upper_candidates(prof: &Profile, alpha: f64) -> (Vec<Candidate>, Vec<Omitted>) {
    let mut out = Vec::new();
    let mut omitted = Vec::new();
    let mut push = |tag: &str, value: f64, measure: Measure, builder: Option<Builder>| {
        out.push(Candidate {
            bound: UpperBound {
                tag: tag.into(),
                value,
                constructive: builder.is_some(),
                measure,
                verified: None,
            },
            builder,
        })
    };
    let mut skip = |tag: &str, reason: String| omitted.push(Omitted { tag: tag.into(), reason });
    let p = prof.p() as f64;

    if alpha >= 2.0 {
        skip("shortest_path", "needs alpha < 2".into());
        return (out, omitted);
    }
    push("shortest_path", ceil_log2(prof.n) as f64, Measure::Doubling, Some(Builder::Spm));

    if alpha < 1.0 {
        let c = ceil_recip(alpha) as f64;
        let v = if prof.p() <= 1 { 0.0 } else { ceil(LOG2_3 * ceil(p.ln() / c.ln())) };
        push("clique_collapse", v, Measure::Doubling, Some(Builder::Collapse(alpha)));
    } else {
        skip("clique_collapse", "needs alpha < 1".into());
    }
    if alpha <= 1.0 {
        let v = if prof.p() == 0 { 0.0 } else { ceil(p.log2() + LOG2_3) };
        push("pseudo_metric_at_1", v, Measure::Doubling, Some(Builder::Prop6(1.0)));
        let a = 1.0 + ALPHA_ONE_OFFSET;
        let v = prop6_ceiling(prof.p().max(1), prof.max_classes, a) as f64;
        push("pseudo_metric_above_1", v, Measure::Doubling, Some(Builder::Prop6(a)));
    } else {
        push(
            "pseudo_metric",
            prop6_ceiling(prof.p().max(1), prof.max_classes, alpha) as f64,
            Measure::Doubling,
            Some(Builder::Prop6(alpha)),
        );
    }

    push(
        "linf_quotient",
        ceil(LOG2_3 * prof.classes as f64),
        Measure::Doubling,
        Some(Builder::FrechetQ),
    );
    if prof.connected {
        push(
            "frechet",
            ceil(LOG2_3 * prof.n.saturating_sub(1) as f64),
            Measure::Doubling,
            Some(Builder::Frechet),
        );
    } else {
        skip("frechet", "graph is disconnected".into());
    }

    if alpha < std::f64::consts::FRAC_1_SQRT_2 {
        let d = ceil(4.0 * (p + 1.0).ln() / (2.0 - 4.0 * alpha * alpha));
        push("l2_packing", ceil(LOG2_5 * d), Measure::Doubling, Some(Builder::PackingL2(alpha)));
    } else {
        skip("l2_packing", "needs alpha < 1/sqrt(2)".into());
    }
    if alpha > 1.0 / 3f64.sqrt() && alpha < 1.0 {
        let d = construct::simplex_jl_dim(prof.p(), alpha) as f64;
        push("l2_simplex", ceil(LOG2_5 * d), Measure::Doubling, Some(Builder::Simplex(alpha)));
    } else {
        skip("l2_simplex", "needs 1/sqrt(3) < alpha < 1".into());
    }
    let l2_top = l2_recovery_limit(prof.lambda);
    if alpha < l2_top {
        let k = prof.classes as f64;
        let jl = if prof.classes <= 1 { 0.0 } else { ceil(192.0 * prof.lambda * prof.lambda * k.ln()) };
        let d = jl.min(k - 1.0).max(0.0);
        push("l2_schoenberg", ceil(LOG2_5 * d), Measure::Doubling, Some(Builder::SchoenbergJl(d as usize)));
    } else {
        skip("l2_schoenberg", format!("needs alpha < {l2_top}"));
    }
    match prof.regular {
        Some(k) if k > 0 && alpha < (1.0 + 1.0 / (4.0 * k as f64)).sqrt() => {
            let d = kregular_dim(prof.n, k);
            push("kregular_l2", d, Measure::L2Dim, Some(Builder::SchoenbergJl(d.min(prof.n as f64) as usize)));
        }
        Some(k) if k > 0 => skip("kregular_l2", format!("needs alpha < sqrt(1 + 1/{})", 4 * k)),
        _ => skip("kregular_l2", "graph is not regular with positive degree".into()),
    }
    (out, omitted)
}

/// Upper end `(1 − min(1, 1/(4λ)))^{−1/2}` of the α range covered by the
/// Schoenberg construction.
pub fn l2_recovery_limit(lambda: f64) -> f64 {
    let t = if lambda > 0.0 { (1.0 / (4.0 * lambda)).min(1.0) } else { 1.0 };
    (1.0 - t).powf(-0.5)
}

/// `⌈192 k² ln n⌉`.
pub fn kregular_dim(n: usize, k: usize) -> f64 {
    let k = k as f64;
    ceil(192.0 * k * k * (n.max(1) as f64).ln())
}

/// Every applicable upper-bound formula at α, without building anything.
pub fn upper_bounds(g: &Graph, alpha: f64, limits: &Limits) -> Result<Vec<UpperBound>> {
    let prof = Profile::new(g, limits)?;
    Ok(upper_candidates(&prof, alpha).0.into_iter().map(|c| c.bound).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph_digest: String,
    pub alpha: f64,
    pub lower_bounds: Vec<LowerBound>,
    pub upper_bounds: Vec<UpperBound>,
    pub omitted: Vec<Omitted>,
    pub feasible: bool,
    /// `[max lower, min doubling upper]`; absent when infeasible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub limits: Limits,
    pub strategy: SubsetStrategy,
    /// Constructions are built and checked when `n` is at most this.
    pub verify_up_to: usize,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { limits: Limits::default(), strategy: SubsetStrategy::default(), verify_up_to: 40, seed: 0 }
    }
}

/// Feasibility, all applicable lower and upper bounds, and the resulting
/// interval. Constructive upper bounds are built and checked at α when the
/// graph is small enough.
pub fn report(g: &Graph, alpha: f64, opts: &ReportOptions) -> Result<BoundReport> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha must be positive and finite, got {alpha}")));
    }
    let limits = &opts.limits;
    let mut lower = vec![LowerBound { tag: "trivial".into(), value: 0.0, witness: None }];
    let mut notes = Vec::new();
    let feasible = alpha < 2.0 || alpha2_feasible(g);
    if !feasible {
        notes.push("a connected component is not a clique, so no map preserves at alpha >= 2".into());
        return Ok(BoundReport {
            graph_digest: g.digest(),
            alpha,
            lower_bounds: lower,
            upper_bounds: Vec::new(),
            omitted: Vec::new(),
            feasible,
            interval: None,
            notes,
        });
    }
    if alpha < 2.0 {
        let b = lower_clique_partition(g, alpha, &opts.strategy, limits)?;
        lower.push(LowerBound { tag: "clique_partition".into(), value: b.value, witness: Some(b) });
        if alpha > 1.0 {
            let b = lower_neighborhood(g, alpha, &opts.strategy)?;
            lower.push(LowerBound { tag: "neighborhood_partition".into(), value: b.value, witness: Some(b) });
        }
    }
    let prof = Profile::new(g, limits)?;
    let (candidates, omitted) = upper_candidates(&prof, alpha);
    let verify = g.n() <= opts.verify_up_to;
    let mut upper: Vec<UpperBound> = candidates
        .into_par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut b = c.bound;
            if let (true, Some(builder)) = (verify, c.builder) {
                let seed = seed::derive(opts.seed, i as u64);
                b.verified = Some(
                    builder
                        .build(g, alpha, seed, limits)
                        .and_then(|e| e.check(g, alpha))
                        .is_ok_and(|cert| cert.pass),
                );
            }
            b
        })
        .collect();
    if alpha >= 2.0 {
        let comps = g.components().len();
        upper.push(UpperBound {
            tag: "component_collapse".into(),
            value: ceil_log2(comps) as f64,
            constructive: false,
            measure: Measure::Doubling,
            verified: None,
        });
    }
    if prof.partition.mode == Mode::Greedy {
        notes.push(format!("clique partition is greedy (n > {}); upper bounds use its size", limits.clique_cover_exact));
    }
    let lo = lower.iter().map(|b| b.value).fold(f64::NEG_INFINITY, f64::max);
    let hi = upper
        .iter()
        .filter(|b| b.measure == Measure::Doubling && b.verified != Some(false))
        .map(|b| b.value)
        .fold(f64::INFINITY, f64::min);
    Ok(BoundReport {
        graph_digest: g.digest(),
        alpha,
        lower_bounds: lower,
        upper_bounds: upper,
        omitted,
        feasible,
        interval: Some([lo, hi]),
        notes,
    })
}

impl BoundReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "graph {}  alpha {}", self.graph_digest, self.alpha)?;
        writeln!(f, "feasible: {}", self.feasible)?;
        writeln!(f, "{:<26} {:>12}", "lower bound", "value")?;
        for b in &self.lower_bounds {
            writeln!(f, "{:<26} {:>12.6}", b.tag, b.value)?;
        }
        writeln!(f, "{:<26} {:>12} {:>8} {:>10}", "upper bound", "value", "measure", "verified")?;
        for b in &self.upper_bounds {
            let measure = match b.measure {
                Measure::Doubling => "doubling",
                Measure::L2Dim => "l2 dim",
            };
            let verified = match b.verified {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None if b.constructive => "-",
                None => "n/a",
            };
            writeln!(f, "{:<26} {:>12} {:>8} {:>10}", b.tag, b.value, measure, verified)?;
        }
        for o in &self.omitted {
            writeln!(f, "{:<26} omitted: {}", o.tag, o.reason)?;
        }
        if let Some([lo, hi]) = self.interval {
            writeln!(f, "interval: [{lo:.6}, {hi}]")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Cluster saliency `ξ = p − q + pq`.
pub fn saliency(p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) || q > p {
        return Err(Error::Domain { formula: "saliency", reason: format!("need 0 <= q <= p <= 1, got p = {p}, q = {q}") });
    }
    Ok(p - q + p * q)
}

/// `(ln n − 2 ln 2) / (2 ln(8/α))`, the typical-graph lower bound.
pub fn random_graph_lower(n: usize, alpha: f64) -> Result<f64> {
    check_open(alpha, 0.0, 2.0, "random-graph lower bound")?;
    if n < 1 {
        return Err(Error::Domain { formula: "random-graph lower bound", reason: "n must be positive".into() });
    }
    Ok(((n as f64).ln() - 2.0 * 2f64.ln()) / (2.0 * (8.0 / alpha).ln()))
}

/// `⌈ln(n−1) / ln(k/(2√(k−1)+1/2))⌉`, the typical diameter of a random
/// k-regular graph.
pub fn regular_diameter_bound(n: usize, k: usize) -> Result<usize> {
    let formula = "regular-graph diameter bound";
    if n < 3 {
        return Err(Error::Domain { formula, reason: format!("need n >= 3, got {n}") });
    }
    let kf = k as f64;
    let ratio = kf / (2.0 * (kf - 1.0).max(0.0).sqrt() + 0.5);
    if ratio <= 1.0 {
        return Err(Error::Domain { formula, reason: format!("k = {k} gives spectral ratio {ratio} <= 1") });
    }
    Ok(((n as f64 - 1.0).ln() / ratio.ln()).ceil() as usize)
}

/// `ln(n/(k+1)) / ln((4/α)·D)` with `D` the regular-graph diameter bound.
pub fn regular_graph_lower(n: usize, k: usize, alpha: f64) -> Result<f64> {
    check_open(alpha, 0.0, 2.0, "regular-graph lower bound")?;
    let d = regular_diameter_bound(n, k)? as f64;
    Ok((n as f64 / (k as f64 + 1.0)).ln() / ((4.0 / alpha) * d).ln())
}

/// `n / (3 log₂(16/(α−1)))`, the normed-space lower bound for `α ∈ (1, 2)`.
pub fn normed_lower(n: usize, alpha: f64) -> Result<f64> {
    check_open(alpha, 1.0, 2.0, "normed-space lower bound")?;
    Ok(n as f64 / (3.0 * (16.0 / (alpha - 1.0)).log2()))
}

/// `n/15 − 1/4`, the Euclidean lower bound at α = 1.
pub fn euclidean_lower(n: usize) -> f64 {
    n as f64 / 15.0 - 0.25
}

/// `ln|S| / (n ln(8R/(α−1)))` for a family of `|S|` graphs of diameter at
/// most `R` on `n` vertices.
pub fn family_lower(family_size: f64, n: usize, radius: f64, alpha: f64) -> Result<f64> {
    let formula = "graph-family lower bound";
    check_open(alpha, 1.0, 2.0, formula)?;
    if !(family_size >= 1.0) || n == 0 || !(radius > 0.0) {
        return Err(Error::Domain {
            formula,
            reason: format!("need |S| >= 1, n >= 1, R > 0; got {family_size}, {n}, {radius}"),
        });
    }
    Ok(family_size.ln() / (n as f64 * (8.0 * radius / (alpha - 1.0)).ln()))
}

/// `((1−ξ) ln n + ξ ln(k/2c)) / ln(8/α)` for the planted partition model.
pub fn planted_lower(n: usize, k: usize, c: f64, p: f64, q: f64, alpha: f64) -> Result<f64> {
    let formula = "planted-partition lower bound";
    check_open(alpha, 0.0, 2.0, formula)?;
    if k < 1 || n < k || !(c >= 1.0) || !(q > 0.0) || q >= 1.0 {
        return Err(Error::Domain {
            formula,
            reason: format!("need n >= k >= 1, c >= 1, 0 < q < 1; got n = {n}, k = {k}, c = {c}, q = {q}"),
        });
    }
    let xi = saliency(p, q)?;
    Ok(((1.0 - xi) * (n as f64).ln() + xi * (k as f64 / (2.0 * c)).ln()) / (8.0 / alpha).ln())
}

/// `ln n / ln(8/(α−1))` for planted cliques with `α ∈ (1, 2)`.
pub fn clusters_lower(n: usize, alpha: f64) -> Result<f64> {
    check_open(alpha, 1.0, 2.0, "clustered-graph lower bound")?;
    Ok((n as f64).ln() / (8.0 / (alpha - 1.0)).ln())
}

/// `(1 − 1/λ)^{−1/2}`: above this α some graph with top eigenvalue λ has no
/// Euclidean preservation.
pub fn l2_ceiling(lambda: f64) -> Result<f64> {
    if !(lambda > 1.0) {
        return Err(Error::Domain { formula: "l2 ceiling", reason: format!("need lambda > 1, got {lambda}") });
    }
    Ok((1.0 - 1.0 / lambda).powf(-0.5))
}

/// A probability bound clamped into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probability {
    pub raw: f64,
    pub value: f64,
    /// The raw bound fell outside `(0, 1)` and says nothing.
    pub vacuous: bool,
}

impl Probability {
    pub fn new(raw: f64) -> Self {
        Probability { raw, value: raw.clamp(0.0, 1.0), vacuous: !(raw > 0.0 && raw < 1.0) }
    }
}

/// `1 − 2^{−n/5}`.
pub fn floor_random_lower(n: usize) -> Probability {
    Probability::new(1.0 - (-(n as f64) / 5.0).exp2())
}

/// `1 − n² e^{−q²(n−1)}`: probability of diameter at most 2 when every edge
/// appears independently with probability at least `q`.
pub fn floor_diameter2(n: usize, q: f64) -> Probability {
    let n = n as f64;
    Probability::new(1.0 - n * n * (-(q * q) * (n - 1.0)).exp())
}

/// `n^m 2^{−C(m,2)}`: Markov bound on a clique of size `m` in `G(n, 1/2)`.
pub fn ceiling_clique(n: usize, m: usize) -> Probability {
    let m = m as f64;
    Probability::new((m * (n as f64).log2() - m * (m - 1.0) / 2.0).exp2())
}

/// `1 − n²(max(q, 1−q)^{2n(1−c/k)} + e^{−q²(n−1)})`: probability that all
/// closed neighborhoods differ in the planted clique model.
pub fn floor_distinct_neighborhoods(n: usize, k: usize, c: f64, q: f64) -> Probability {
    let nf = n as f64;
    let a = q.max(1.0 - q).powf(2.0 * nf * (1.0 - c / k as f64));
    let b = (-(q * q) * (nf - 1.0)).exp();
    Probability::new(1.0 - nf * nf * (a + b))
}

/// Inputs for [`theorem_formulas`]; formulas whose inputs are out of domain
/// report the violation instead of a value.
#[derive(Debug, Clone, PartialEq)]
pub struct FormulaParams {
    pub n: usize,
    pub alpha: f64,
    pub k: usize,
    pub c: f64,
    pub p: f64,
    pub q: f64,
    pub lambda: f64,
    pub family_size: f64,
    pub radius: f64,
}

impl Default for FormulaParams {
    fn default() -> Self {
        FormulaParams {
            n: 100,
            alpha: 1.0,
            k: 4,
            c: 1.0,
            p: 0.5,
            q: 0.5,
            lambda: 2.0,
            family_size: 2.0,
            radius: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FormulaValue {
    fn from(name: &str, r: Result<f64>) -> Self {
        let (value, error) = match r {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        FormulaValue { name: name.into(), value, error, note: None }
    }
}

pub const PLANTED_NOTE: &str =
    "uses ln(k/2c) as in the theorem statement; the clustered-data discussion prints ln(k/3c)";

/// Every closed-form theorem value at `params`.
pub fn theorem_formulas(params: &FormulaParams) -> Vec<FormulaValue> {
    let FormulaParams { n, alpha, k, c, p, q, lambda, family_size, radius } = *params;
    let prob = |name: &str, pr: Probability| FormulaValue {
        name: name.into(),
        value: Some(pr.value),
        error: None,
        note: pr.vacuous.then(|| format!("vacuous (raw {})", pr.raw)),
    };
    let mut planted = FormulaValue::from("planted_lower", planted_lower(n, k, c, p, q, alpha));
    planted.note = Some(PLANTED_NOTE.into());
    vec![
        FormulaValue::from("random_graph_lower", random_graph_lower(n, alpha)),
        prob("random_graph_floor", floor_random_lower(n)),
        FormulaValue::from("regular_graph_lower", regular_graph_lower(n, k, alpha)),
        FormulaValue::from("regular_diameter_bound", regular_diameter_bound(n, k).map(|d| d as f64)),
        FormulaValue::from("normed_lower", normed_lower(n, alpha)),
        FormulaValue::from("euclidean_lower", Ok(euclidean_lower(n))),
        FormulaValue::from("family_lower", family_lower(family_size, n, radius, alpha)),
        FormulaValue::from("saliency", saliency(p, q)),
        planted,
        FormulaValue::from("clusters_lower", clusters_lower(n, alpha)),
        prob("clusters_floor", floor_distinct_neighborhoods(n, k, c, q)),
        FormulaValue::from("kregular_l2_dim", Ok(kregular_dim(n, k))),
        FormulaValue::from("l2_ceiling", l2_ceiling(lambda)),
        prob("diameter2_floor", floor_diameter2(n, q)),
        prob("clique_ceiling", ceiling_clique(n, (2.0 * (n as f64).sqrt()).ceil() as usize)),
    ]
}

/// Order of the preservation dimension for graphs of constant
/// diameter: `ln|P|/ln(8/α) + [α > 1]·ln|C|/ln(4/(α−1))`.
pub fn constant_diameter_theta(g: &Graph, alpha: f64, limits: &Limits) -> Result<f64> {
    check_open(alpha, 0.0, 2.0, "constant-diameter estimate")?;
    let p = clique_cover_auto(g, limits)?.len().max(1) as f64;
    let mut t = p.ln() / (8.0 / alpha).ln();
    if alpha > 1.0 {
        let c = neighborhood_partition(g).len().max(1) as f64;
        t += c.ln() / (4.0 / (alpha - 1.0)).ln();
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, gen_kregular, gen_named, Family};

    fn lim() -> Limits {
        Limits::default()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn star_clique_partition_bound() {
        let g = gen_named(Family::Star, 100).unwrap();
        let s = SubsetStrategy { max_radius: 0, ..Default::default() };
        let b = lower_clique_partition(&g, 1.0, &s, &lim()).unwrap();
        // n = 100 exceeds the exact limit; the certified count is ι = 99.
        assert_eq!(b.parts, 99);
        assert_eq!(b.diameter, 2);
        assert!(close(b.value, 2.2097855400265365, 1e-12), "{}", b.value);
    }

    #[test]
    fn complete_and_empty() {
        let k = Graph::complete(6);
        let b = lower_clique_partition(&k, 1.0, &SubsetStrategy::default(), &lim()).unwrap();
        assert_eq!(b.value, 0.0);
        assert_eq!(lower_neighborhood(&k, 1.5, &SubsetStrategy::default()).unwrap().value, 0.0);
        let e = Graph::empty(5);
        assert_eq!(lower_neighborhood(&e, 1.5, &SubsetStrategy::default()).unwrap().value, f64::NEG_INFINITY);
        assert_eq!(
            lower_clique_partition(&e, 1.0, &SubsetStrategy::default(), &lim()).unwrap().value,
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn cycle_bound_is_small() {
        for n in [6usize, 9, 12] {
            let g = gen_named(Family::Cycle, n).unwrap();
            let s = SubsetStrategy { max_radius: 0, ..Default::default() };
            let b = lower_clique_partition(&g, 1.0, &s, &lim()).unwrap();
            let cap = ((n as f64) / 2.0).ceil().ln() / (4.0 * (n / 2) as f64).ln();
            assert!(b.value <= cap + 1e-12);
        }
    }

    #[test]
    fn matched_cliques_neighborhood_bound() {
        let g = gen_named(Family::TwoCliquesMatched, 10).unwrap();
        let b = lower_neighborhood(&g, 1.5, &SubsetStrategy::default()).unwrap();
        assert_eq!((b.parts, b.diameter), (10, 2));
        assert!(close(b.value, 0.8304820237218406, 1e-12));
    }

    #[test]
    fn domains() {
        let g = Graph::complete(3);
        assert!(lower_clique_partition(&g, 2.0, &SubsetStrategy::default(), &lim()).is_err());
        assert!(lower_neighborhood(&g, 1.0, &SubsetStrategy::default()).is_err());
        assert!(matches!(regular_diameter_bound(100, 3), Err(Error::Domain { .. })));
        assert!(normed_lower(10, 1.0).is_err());
        assert!(saliency(0.3, 0.5).is_err());
        assert!(l2_ceiling(1.0).is_err());
    }

    #[test]
    fn formula_snapshot() {
        assert!(close(random_graph_lower(82, 1.0).unwrap(), 0.7262586674363473, 1e-12));
        assert!(close(regular_graph_lower(1000, 4, 1.0).unwrap(), 0.6599155288106931, 1e-12));
        assert_eq!(regular_diameter_bound(1000, 4).unwrap(), 767);
        assert!(close(normed_lower(100, 1.5).unwrap(), 6.666666666666667, 1e-12));
        assert_eq!(euclidean_lower(150), 9.75);
        assert!(close(planted_lower(1024, 16, 1.0, 0.5, 0.5, 1.0).unwrap(), 2.75, 1e-12));
        assert!(close(clusters_lower(100, 1.5).unwrap(), 1.660964047443681, 1e-12));
        assert_eq!(saliency(0.5, 0.5).unwrap(), 0.25);
        assert_eq!(saliency(1.0, 0.3).unwrap(), 1.0);
        assert!(close(l2_ceiling(4.0).unwrap(), 1.1547005383792515, 1e-15));
        assert_eq!(kregular_dim(100, 3), 7958.0);
        assert!(close(family_lower(2f64.powi(45), 10, 2.0, 1.5).unwrap(), 45.0 * 2f64.ln() / (10.0 * 32f64.ln()), 1e-12));
    }

    #[test]
    fn probability_bounds() {
        let d = floor_diameter2(40, 0.5);
        assert!(close(d.value, 0.9067285380306099, 1e-12) && !d.vacuous);
        let m = ceiling_clique(64, 16);
        assert_eq!(m.value, 2f64.powi(-24));
        let small = ceiling_clique(4, 4);
        assert_eq!((small.raw, small.value, small.vacuous), (4.0, 1.0, true));
        let p = floor_distinct_neighborhoods(60, 6, 1.0, 0.3);
        assert!(p.vacuous && p.value == 0.0);
        assert!(floor_diameter2(2, 0.5).vacuous);
        assert!(close(floor_random_lower(82).value, 1.0 - 2f64.powf(-16.4), 1e-15));
    }

    #[test]
    fn formula_table_reports_errors() {
        let p = FormulaParams { alpha: 1.0, k: 3, ..Default::default() };
        let t = theorem_formulas(&p);
        let get = |name: &str| t.iter().find(|f| f.name == name).unwrap();
        assert!(get("normed_lower").error.is_some());
        assert!(get("regular_graph_lower").error.is_some());
        assert!(get("planted_lower").note.as_deref().unwrap().contains("k/3c"));
        assert_eq!(get("euclidean_lower").value, Some(100.0 / 15.0 - 0.25));
    }

    #[test]
    fn upper_formula_examples() {
        let mut g = Graph::empty(16);
        for base in [0, 8] {
            for u in base..base + 8 {
                for v in (u + 1)..base + 8 {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let ub = upper_bounds(&g, 1.0, &lim()).unwrap();
        let at1 = ub.iter().find(|b| b.tag == "pseudo_metric_at_1").unwrap();
        assert_eq!(at1.value, 3.0);
        let trivial = upper_bounds(&Graph::empty(100), 0.5, &lim()).unwrap();
        assert_eq!(trivial.iter().find(|b| b.tag == "shortest_path").unwrap().value, 7.0);
        let reg = gen_kregular(100, 3, 1).unwrap();
        let ub = upper_bounds(&reg, 1.0, &lim()).unwrap();
        let kr = ub.iter().find(|b| b.tag == "kregular_l2").unwrap();
        assert_eq!((kr.value, kr.measure), (7958.0, Measure::L2Dim));
    }

    #[test]
    fn complete_graph_report() {
        let r = report(&Graph::complete(6), 1.5, &ReportOptions::default()).unwrap();
        assert!(r.feasible);
        assert_eq!(r.interval, Some([0.0, 0.0]));
        assert!(r.upper_bounds.iter().any(|b| b.value == 0.0 && b.verified == Some(true)));
    }

    #[test]
    fn infeasible_at_two() {
        let r = report(&gen_named(Family::Path, 3).unwrap(), 2.0, &ReportOptions::default()).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.interval, None);
        let r = report(&Graph::complete(3), 2.5, &ReportOptions::default()).unwrap();
        assert!(r.feasible);
        assert_eq!(r.interval, Some([0.0, 0.0]));
    }

    #[test]
    fn random_graph_sandwich() {
        let g = gen_gnp(20, 0.5, 7).unwrap();
        let r = report(&g, 1.0, &ReportOptions::default()).unwrap();
        let [lo, hi] = r.interval.unwrap();
        assert!(lo <= hi);
        for b in r.upper_bounds.iter().filter(|b| b.constructive) {
            assert_eq!(b.verified, Some(true), "{} failed", b.tag);
            assert!(lo <= b.value);
        }
        let json = r.to_json().unwrap();
        let back: BoundReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(r.to_string().contains("clique_partition"));
    }
}
