//! Finite metric spaces and normed point sets, covering and packing numbers,
//! and a point-centered doubling-dimension estimator.
//!
//! Every ball here is open: `B_r(x) = { y : d(x, y) < r }`, with centers
//! restricted to the points of the space.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;
use crate::partition::{clique_number, Mode};
use crate::Limits;

/// Slack allowed on the triangle inequality and on symmetry.
pub const METRIC_TOL: f64 = 1e-12;

/// Anything that can report pairwise distances between `len()` points.
pub trait Distances {
    fn len(&self) -> usize;
    fn dist(&self, i: usize, j: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetric {
    pub n: usize,
    pub dist: Vec<Vec<f64>>,
    pub pseudo: bool,
}

impl Distances for FiniteMetric {
    fn len(&self) -> usize {
        self.n
    }
    fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }
}

impl FiniteMetric {
    pub fn from_fn(n: usize, pseudo: bool, f: impl Fn(usize, usize) -> f64) -> Self {
        let dist = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { f(i, j) }).collect())
            .collect();
        FiniteMetric { n, dist, pseudo }
    }

    /// All distinct points at distance `d`.
    pub fn uniform(n: usize, d: f64) -> Self {
        FiniteMetric::from_fn(n, false, |_, _| d)
    }

    /// Shortest-path metric of a connected graph.
    pub fn shortest_path(g: &Graph) -> Result<Self> {
        let apd = g.all_pairs_distances();
        let mut rows = Vec::with_capacity(g.n());
        for row in apd {
            rows.push(
                row.into_iter()
                    .map(|d| d.map(|d| d as f64).ok_or(Error::Disconnected))
                    .collect::<Result<Vec<f64>>>()?,
            );
        }
        Ok(FiniteMetric { n: g.n(), dist: rows, pseudo: false })
    }

    /// Merge points at distance exactly zero. Returns the quotient metric and
    /// the map from old to new point indices (classes ordered by first member).
    pub fn identify_zero_distance(&self) -> (FiniteMetric, Vec<usize>) {
        let mut class = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for i in 0..self.n {
            if class[i] != usize::MAX {
                continue;
            }
            class[i] = reps.len();
            for j in (i + 1)..self.n {
                if class[j] == usize::MAX && self.dist[i][j] == 0.0 {
                    class[j] = reps.len();
                }
            }
            reps.push(i);
        }
        let m = FiniteMetric::from_fn(reps.len(), false, |a, b| self.dist[reps[a]][reps[b]]);
        (m, class)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| parse_err(0, "missing point count"))?;
        let n: usize = header
            .parse()
            .map_err(|e| parse_err(line_no, format!("bad point count: {e}")))?;
        let mut dist = Vec::with_capacity(n);
        for _ in 0..n {
            let (line_no, row) = lines.next().ok_or_else(|| parse_err(0, "missing matrix row"))?;
            let vals = parse_reals(line_no, row)?;
            if vals.len() != n {
                return Err(parse_err(line_no, format!("expected {n} entries, found {}", vals.len())));
            }
            dist.push(vals);
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(parse_err(line_no, "trailing content"));
        }
        let pseudo = (0..n).any(|i| (0..n).any(|j| i != j && dist[i][j] == 0.0));
        Ok(FiniteMetric { n, dist, pseudo })
    }
}

impl fmt::Display for FiniteMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in &self.dist {
            let cells: Vec<String> = row.iter().map(f64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Norm {
    #[serde(rename = "1")]
    L1,
    #[serde(rename = "2")]
    L2,
    #[serde(rename = "inf")]
    Linf,
}

impl Norm {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Norm::L1 => diffs.sum(),
            Norm::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Norm::Linf => diffs.fold(0.0, f64::max),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L1 => "1",
            Norm::L2 => "2",
            Norm::Linf => "inf",
        })
    }
}

impl FromStr for Norm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Norm::L1),
            "2" => Ok(Norm::L2),
            "inf" => Ok(Norm::Linf),
            other => Err(Error::InvalidParameter(format!("unknown norm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Vec<f64>>,
    pub dim: usize,
    pub norm: Norm,
}

impl Distances for PointSet {
    fn len(&self) -> usize {
        self.points.len()
    }
    fn dist(&self, i: usize, j: usize) -> f64 {
        self.norm.distance(&self.points[i], &self.points[j])
    }
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>, dim: usize, norm: Norm) -> Result<Self> {
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::InvalidParameter(format!(
                "point of dimension {} in a {dim}-dimensional set",
                bad.len()
            )));
        }
        Ok(PointSet { points, dim, norm })
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| parse_err(0, "missing \"n d p\" header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [n, d, p] = fields[..] else {
            return Err(parse_err(line_no, "expected \"n d p\""));
        };
        let n: usize = n.parse().map_err(|e| parse_err(line_no, format!("bad count: {e}")))?;
        let d: usize = d.parse().map_err(|e| parse_err(line_no, format!("bad dimension: {e}")))?;
        let norm: Norm = p.parse().map_err(|_| parse_err(line_no, "norm must be 1, 2 or inf"))?;
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            // zero-dimensional points serialize as empty lines, which are skipped
            if d == 0 {
                points.push(Vec::new());
                continue;
            }
            let (line_no, row) = lines.next().ok_or_else(|| parse_err(0, "missing coordinate line"))?;
            let vals = parse_reals(line_no, row)?;
            if vals.len() != d {
                return Err(parse_err(line_no, format!("expected {d} coordinates, found {}", vals.len())));
            }
            points.push(vals);
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(parse_err(line_no, "trailing content"));
        }
        Ok(PointSet { points, dim: d, norm })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.points.len(), self.dim, self.norm)?;
        for p in &self.points {
            let cells: Vec<String> = p.iter().map(f64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_reals(line_no: usize, row: &str) -> Result<Vec<f64>> {
    row.split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|e| parse_err(line_no, format!("bad number {t:?}: {e}"))))
        .collect()
}

pub fn induced_metric(p: &PointSet) -> FiniteMetric {
    let n = p.len();
    let m = FiniteMetric::from_fn(n, false, |i, j| p.dist(i, j));
    let pseudo = (0..n).any(|i| ((i + 1)..n).any(|j| m.dist[i][j] == 0.0));
    FiniteMetric { pseudo, ..m }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum MetricViolation {
    Shape { row: usize, len: usize },
    NonFinite { i: usize, j: usize },
    Diagonal { i: usize },
    Negative { i: usize, j: usize },
    Asymmetric { i: usize, j: usize },
    Identity { i: usize, j: usize },
    Triangle { i: usize, j: usize, k: usize },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::Shape { row, len } => write!(f, "row {row} has {len} entries"),
            MetricViolation::NonFinite { i, j } => write!(f, "d({i},{j}) is not finite"),
            MetricViolation::Diagonal { i } => write!(f, "d({i},{i}) is nonzero"),
            MetricViolation::Negative { i, j } => write!(f, "d({i},{j}) is negative"),
            MetricViolation::Asymmetric { i, j } => write!(f, "d({i},{j}) differs from d({j},{i})"),
            MetricViolation::Identity { i, j } => write!(f, "distinct points {i} and {j} at distance 0"),
            MetricViolation::Triangle { i, j, k } => write!(f, "d({i},{k}) exceeds d({i},{j}) + d({j},{k})"),
        }
    }
}

/// First violated axiom, with witness indices.
pub fn validate_metric(m: &FiniteMetric) -> std::result::Result<(), MetricViolation> {
    let n = m.n;
    if m.dist.len() != n {
        return Err(MetricViolation::Shape { row: m.dist.len(), len: 0 });
    }
    for (row, r) in m.dist.iter().enumerate() {
        if r.len() != n {
            return Err(MetricViolation::Shape { row, len: r.len() });
        }
    }
    let d = &m.dist;
    for i in 0..n {
        for j in 0..n {
            if !d[i][j].is_finite() {
                return Err(MetricViolation::NonFinite { i, j });
            }
        }
    }
    for i in 0..n {
        if d[i][i] != 0.0 {
            return Err(MetricViolation::Diagonal { i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if d[i][j] < 0.0 {
                return Err(MetricViolation::Negative { i, j });
            }
            if (d[i][j] - d[j][i]).abs() > METRIC_TOL {
                return Err(MetricViolation::Asymmetric { i, j });
            }
            if !m.pseudo && i != j && d[i][j] == 0.0 {
                return Err(MetricViolation::Identity { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d[i][k] > d[i][j] + d[j][k] + METRIC_TOL {
                    return Err(MetricViolation::Triangle { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// Indices of `subset` lying in the open ball `B_r(center)`.
pub fn ball<D: Distances + ?Sized>(m: &D, subset: &[usize], center: usize, r: f64) -> Vec<usize> {
    subset.iter().copied().filter(|&y| m.dist(center, y) < r).collect()
}

/// Minimum set cover of the bitmask `universe` by `sets`, by branch-and-bound
/// seeded with the greedy solution.
fn min_set_cover(universe: u64, sets: &[u64], budget: u64) -> Result<usize> {
    if universe == 0 {
        return Ok(0);
    }
    let mut family: Vec<u64> = sets.iter().map(|s| s & universe).filter(|&s| s != 0).collect();
    family.sort_unstable_by_key(|s| std::cmp::Reverse(s.count_ones()));
    family.dedup();
    let dominated = |i: usize, fam: &[u64]| {
        fam.iter()
            .enumerate()
            .any(|(j, &t)| j != i && family_subset(fam[i], t) && (fam[i] != t || j < i))
    };
    let family: Vec<u64> = (0..family.len())
        .filter(|&i| !dominated(i, &family))
        .map(|i| family[i])
        .collect();
    let covered = family.iter().fold(0, |acc, s| acc | s);
    if covered != universe {
        return Err(Error::Degenerate("set family does not cover the universe".into()));
    }

    struct Search<'a> {
        family: &'a [u64],
        best: usize,
        nodes: u64,
        budget: u64,
    }
    impl Search<'_> {
        fn run(&mut self, uncovered: u64, depth: usize) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudget(self.budget));
            }
            if uncovered == 0 {
                self.best = self.best.min(depth);
                return Ok(());
            }
            let widest = self.family.iter().map(|s| (s & uncovered).count_ones()).max().unwrap_or(0);
            let need = uncovered.count_ones().div_ceil(widest) as usize;
            if depth + need >= self.best {
                return Ok(());
            }
            let mut pivot = 0;
            let mut pivot_count = usize::MAX;
            let mut rest = uncovered;
            while rest != 0 {
                let e = rest.trailing_zeros();
                rest &= rest - 1;
                let c = self.family.iter().filter(|&&s| s >> e & 1 == 1).count();
                if c < pivot_count {
                    pivot = e;
                    pivot_count = c;
                }
            }
            let mut options: Vec<u64> =
                self.family.iter().copied().filter(|&s| s >> pivot & 1 == 1).collect();
            options.sort_by_key(|s| std::cmp::Reverse((s & uncovered).count_ones()));
            for s in options {
                self.run(uncovered & !s, depth + 1)?;
            }
            Ok(())
        }
    }
    let mut search = Search {
        family: &family,
        best: greedy_set_cover(universe, &family),
        nodes: 0,
        budget,
    };
    search.run(universe, 0)?;
    Ok(search.best)
}

fn family_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

fn greedy_set_cover(universe: u64, sets: &[u64]) -> usize {
    let mut uncovered = universe;
    let mut count = 0;
    while uncovered != 0 {
        let best = sets.iter().max_by_key(|&&s| (s & uncovered).count_ones()).copied().unwrap_or(0);
        if best & uncovered == 0 {
            break;
        }
        uncovered &= !best;
        count += 1;
    }
    count
}

fn check_subset<D: Distances + ?Sized>(m: &D, subset: &[usize]) -> Result<()> {
    match subset.iter().find(|&&v| v >= m.len()) {
        Some(&v) => Err(Error::VertexOutOfRange { vertex: v, n: m.len() }),
        None => Ok(()),
    }
}

fn exact_limit(limits: &Limits) -> usize {
    limits.covering_exact.min(64)
}

/// Ball sets over the positions of `subset`: bit `k` of `sets[c]` is set when
/// `subset[k]` lies in `B_eps(c)`.
fn ball_masks<D: Distances + ?Sized>(m: &D, subset: &[usize], eps: f64) -> Vec<u64> {
    (0..m.len())
        .map(|c| {
            subset
                .iter()
                .enumerate()
                .filter(|&(_, &y)| m.dist(c, y) < eps)
                .fold(0u64, |acc, (k, _)| acc | 1 << k)
        })
        .collect()
}

/// Fewest open `eps`-balls centered at points of `m` covering `subset`.
pub fn covering_number<D: Distances + ?Sized>(
    m: &D,
    subset: &[usize],
    eps: f64,
    mode: Mode,
    limits: &Limits,
) -> Result<usize> {
    check_subset(m, subset)?;
    if eps <= 0.0 && !subset.is_empty() {
        return Err(Error::InvalidParameter("covering radius must be positive".into()));
    }
    match mode {
        Mode::Exact => {
            if subset.len() > exact_limit(limits) {
                return Err(Error::SizeLimit {
                    what: "exact covering number",
                    size: subset.len(),
                    limit: exact_limit(limits),
                });
            }
            let universe = if subset.is_empty() { 0 } else { u64::MAX >> (64 - subset.len()) };
            min_set_cover(universe, &ball_masks(m, subset, eps), limits.search_nodes)
        }
        Mode::Greedy => Ok(greedy_covering(m, subset, eps)),
    }
}

fn greedy_covering<D: Distances + ?Sized>(m: &D, subset: &[usize], eps: f64) -> usize {
    let mut uncovered: Vec<usize> = subset.to_vec();
    let mut count = 0;
    while !uncovered.is_empty() {
        let center = (0..m.len())
            .max_by_key(|&c| {
                let gain = uncovered.iter().filter(|&&y| m.dist(c, y) < eps).count();
                (gain, std::cmp::Reverse(c))
            })
            .unwrap();
        uncovered.retain(|&y| m.dist(center, y) >= eps);
        count += 1;
    }
    count
}

/// Largest subset of `subset` with all pairwise distances at least `eps`.
pub fn packing_number<D: Distances + ?Sized>(
    m: &D,
    subset: &[usize],
    eps: f64,
    mode: Mode,
    limits: &Limits,
) -> Result<usize> {
    check_subset(m, subset)?;
    match mode {
        Mode::Exact => {
            if subset.len() > limits.covering_exact {
                return Err(Error::SizeLimit {
                    what: "exact packing number",
                    size: subset.len(),
                    limit: limits.covering_exact,
                });
            }
            // compatible pairs form a graph whose cliques are exactly the packings
            let k = subset.len();
            let mut compatible = Graph::empty(k);
            for a in 0..k {
                for b in (a + 1)..k {
                    if m.dist(subset[a], subset[b]) >= eps {
                        compatible.add_edge_unchecked(a, b);
                    }
                }
            }
            clique_number(&compatible, Mode::Exact, limits)
        }
        Mode::Greedy => Ok(greedy_packing(m, subset, eps)),
    }
}

/// Farthest-point traversal started at the first element of `subset`.
fn greedy_packing<D: Distances + ?Sized>(m: &D, subset: &[usize], eps: f64) -> usize {
    let Some(&first) = subset.first() else {
        return 0;
    };
    let mut nearest: Vec<f64> = subset.iter().map(|&y| m.dist(first, y)).collect();
    let mut count = 1;
    loop {
        let (k, &far) = nearest
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        if far < eps {
            return count;
        }
        count += 1;
        let chosen = subset[k];
        for (slot, &y) in nearest.iter_mut().zip(subset) {
            *slot = slot.min(m.dist(chosen, y));
        }
    }
}

/// Sorted distinct positive pairwise distances.
fn distinct_distances<D: Distances + ?Sized>(m: &D) -> Vec<f64> {
    let n = m.len();
    let mut ds: Vec<f64> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| m.dist(i, j))
        .filter(|&d| d > 0.0)
        .collect();
    ds.sort_by(f64::total_cmp);
    ds.dedup();
    ds
}

/// Relative step used to probe radii just above each pairwise distance.
pub const RADIUS_NUDGE: f64 = 1e-9;

/// Smallest `d` such that every probed open ball `B_r(x)` is covered by at
/// most `2^d` open balls of radius `r/2` centered at points of `m`. The probed
/// radii are every distinct pairwise distance and a nudge above each.
pub fn doubling_dimension<D: Distances + Sync + ?Sized>(m: &D, mode: Mode, limits: &Limits) -> Result<u32> {
    let n = m.len();
    if mode == Mode::Exact && n > limits.doubling_exact.min(64) {
        return Err(Error::SizeLimit {
            what: "exact doubling dimension",
            size: n,
            limit: limits.doubling_exact.min(64),
        });
    }
    let radii: Vec<f64> = distinct_distances(m)
        .into_iter()
        .flat_map(|d| [d, d * (1.0 + RADIUS_NUDGE)])
        .collect();
    let all: Vec<usize> = (0..n).collect();
    let worst = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut worst = 1usize;
            for &r in &radii {
                let b = ball(m, &all, x, r);
                if b.len() <= worst {
                    continue;
                }
                let c = covering_number(m, &b, r / 2.0, mode, limits)?;
                worst = worst.max(c);
            }
            Ok(worst)
        })
        .collect::<Result<Vec<usize>>>()?
        .into_iter()
        .max()
        .unwrap_or(1);
    Ok(ceil_log2(worst))
}

/// `⌈log₂ k⌉` for `k ≥ 1`.
pub fn ceil_log2(k: usize) -> u32 {
    if k <= 1 {
        0
    } else {
        usize::BITS - (k - 1).leading_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, gen_named, Family};

    fn lim() -> Limits {
        Limits::default()
    }

    fn line(xs: &[f64]) -> PointSet {
        PointSet::new(xs.iter().map(|&x| vec![x]).collect(), 1, Norm::L2).unwrap()
    }

    fn all(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    /// Smallest number of centers covering `subset` by trying every center set
    /// in order of size.
    fn brute_cover(m: &dyn Distances, subset: &[usize], eps: f64) -> usize {
        let n = m.len();
        (0u32..(1 << n))
            .filter(|mask| {
                subset
                    .iter()
                    .all(|&y| (0..n).any(|c| mask >> c & 1 == 1 && m.dist(c, y) < eps))
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn brute_packing(m: &dyn Distances, eps: f64) -> usize {
        let n = m.len();
        (0u32..(1 << n))
            .filter(|mask| {
                (0..n).all(|i| {
                    (0..n).all(|j| i == j || mask >> i & 1 == 0 || mask >> j & 1 == 0 || m.dist(i, j) >= eps)
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn induced_metric_examples() {
        let m = induced_metric(&line(&[0.0, 1.0, 2.0]));
        assert_eq!(m.dist[0][2], 2.0);
        let simplex = PointSet::new(
            (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect(),
            4,
            Norm::L2,
        )
        .unwrap();
        let s = induced_metric(&simplex);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(s.dist[i][j], 2f64.sqrt());
                }
            }
        }
        let sq = PointSet::new(vec![vec![0.0, 0.0], vec![1.0, 1.0]], 2, Norm::Linf).unwrap();
        assert_eq!(sq.dist(0, 1), 1.0);
        let l1 = PointSet::new(vec![vec![0.0, 0.0], vec![1.0, 1.0]], 2, Norm::L1).unwrap();
        assert_eq!(l1.dist(0, 1), 2.0);
        assert!(PointSet::new(vec![vec![0.0], vec![1.0, 2.0]], 1, Norm::L2).is_err());
    }

    #[test]
    fn covering_examples() {
        let u = FiniteMetric::uniform(5, 1.0);
        assert_eq!(covering_number(&u, &all(5), 0.5, Mode::Exact, &lim()).unwrap(), 5);
        assert_eq!(covering_number(&u, &all(5), 1.5, Mode::Exact, &lim()).unwrap(), 1);
        let l = line(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(brute_cover(&l, &all(4), 1.1), 2);
        assert_eq!(covering_number(&l, &all(4), 1.1, Mode::Exact, &lim()).unwrap(), 2);
        assert_eq!(covering_number(&l, &[], 1.1, Mode::Exact, &lim()).unwrap(), 0);
        // open balls: radius exactly 1 reaches nothing else
        assert_eq!(covering_number(&l, &all(4), 1.0, Mode::Exact, &lim()).unwrap(), 4);
    }

    #[test]
    fn packing_examples() {
        let u = FiniteMetric::uniform(5, 1.0);
        assert_eq!(packing_number(&u, &all(5), 1.0, Mode::Exact, &lim()).unwrap(), 5);
        let l = line(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(brute_packing(&l, 2.0), 2);
        assert_eq!(packing_number(&l, &all(4), 2.0, Mode::Exact, &lim()).unwrap(), 2);
        assert_eq!(packing_number(&l, &all(4), 1e-300, Mode::Exact, &lim()).unwrap(), 4);
        assert_eq!(packing_number(&l, &all(4), 1e-300, Mode::Greedy, &lim()).unwrap(), 4);
    }

    #[test]
    fn exact_matches_brute_force_on_random_metrics() {
        for s in 0..40 {
            let g = gen_gnp(9, 0.35, s).unwrap();
            let Ok(m) = FiniteMetric::shortest_path(&g) else { continue };
            for eps in [0.5, 1.0, 1.5, 2.0, 2.5, 3.5] {
                let cov = covering_number(&m, &all(9), eps, Mode::Exact, &lim()).unwrap();
                assert_eq!(cov, brute_cover(&m, &all(9), eps));
                let pack = packing_number(&m, &all(9), eps, Mode::Exact, &lim()).unwrap();
                assert_eq!(pack, brute_packing(&m, eps));
                assert!(covering_number(&m, &all(9), eps, Mode::Greedy, &lim()).unwrap() >= cov);
                assert!(packing_number(&m, &all(9), eps, Mode::Greedy, &lim()).unwrap() <= pack);
            }
        }
    }

    #[test]
    fn size_limits() {
        let u = FiniteMetric::uniform(23, 1.0);
        assert!(matches!(
            covering_number(&u, &all(23), 0.5, Mode::Exact, &lim()),
            Err(Error::SizeLimit { .. })
        ));
        assert_eq!(covering_number(&u, &all(23), 0.5, Mode::Greedy, &lim()).unwrap(), 23);
        assert!(matches!(
            doubling_dimension(&FiniteMetric::uniform(15, 1.0), Mode::Exact, &lim()),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(doubling_dimension(&FiniteMetric::uniform(1, 1.0), Mode::Exact, &lim()).unwrap(), 0);
        assert_eq!(doubling_dimension(&FiniteMetric::uniform(4, 1.0), Mode::Exact, &lim()).unwrap(), 2);
        assert_eq!(doubling_dimension(&FiniteMetric::uniform(5, 1.0), Mode::Exact, &lim()).unwrap(), 3);
        // points on a line: a ball of radius r holds an interval of length < 2r
        let l = line(&(0..8).map(f64::from).collect::<Vec<_>>());
        let d = doubling_dimension(&l, Mode::Exact, &lim()).unwrap();
        assert!((1..=2).contains(&d), "{d}");
        for n in 1..=12 {
            let m = FiniteMetric::from_fn(n, false, |i, j| 1.0 + ((i * 7 + j * 7) % 5) as f64 / 10.0);
            assert!(doubling_dimension(&m, Mode::Exact, &lim()).unwrap() <= ceil_log2(n));
        }
    }

    #[test]
    fn validate_examples() {
        for f in [Family::Path, Family::Cycle, Family::Star] {
            let m = FiniteMetric::shortest_path(&gen_named(f, 7).unwrap()).unwrap();
            assert_eq!(validate_metric(&m), Ok(()));
        }
        let bad = FiniteMetric {
            n: 3,
            dist: vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![3.0, 1.0, 0.0]],
            pseudo: false,
        };
        assert_eq!(validate_metric(&bad), Err(MetricViolation::Triangle { i: 0, j: 1, k: 2 }));
        let mut ident = FiniteMetric::uniform(3, 1.0);
        ident.dist[0][1] = 0.0;
        ident.dist[1][0] = 0.0;
        assert_eq!(validate_metric(&ident), Err(MetricViolation::Identity { i: 0, j: 1 }));
        ident.pseudo = true;
        assert_eq!(validate_metric(&ident), Ok(()));
        let mut asym = FiniteMetric::uniform(3, 1.0);
        asym.dist[0][2] = 1.5;
        assert_eq!(validate_metric(&asym), Err(MetricViolation::Asymmetric { i: 0, j: 2 }));
    }

    #[test]
    fn identify_zero_distance_merges() {
        let mut m = FiniteMetric::uniform(4, 2.0);
        m.pseudo = true;
        m.dist[1][3] = 0.0;
        m.dist[3][1] = 0.0;
        let (q, map) = m.identify_zero_distance();
        assert_eq!(map, vec![0, 1, 2, 1]);
        assert_eq!(q.n, 3);
        assert_eq!(validate_metric(&q), Ok(()));
    }

    #[test]
    fn text_round_trips() {
        let m = FiniteMetric::shortest_path(&gen_named(Family::Cycle, 5).unwrap()).unwrap();
        assert_eq!(FiniteMetric::from_text(&m.to_text()).unwrap(), m);
        let p = PointSet::new(vec![vec![0.1, -2.5], vec![1.0 / 3.0, 7.0]], 2, Norm::Linf).unwrap();
        assert_eq!(PointSet::from_text(&p.to_text()).unwrap(), p);
        let z = PointSet::new(vec![vec![]; 3], 0, Norm::L2).unwrap();
        assert_eq!(PointSet::from_text(&z.to_text()).unwrap(), z);
        assert!(FiniteMetric::from_text("2\n0 1\n").is_err());
        assert!(PointSet::from_text("1 2 3\n0 0\n").is_err());
    }

    #[test]
    fn ceil_log2_values() {
        let expect = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (100, 7)];
        for (k, v) in expect {
            assert_eq!(ceil_log2(k), v);
        }
    }
}
