mod common;

use alphadim::bounds::{constant_diameter_theta, report, ReportOptions};
use alphadim::construct::{pseudo_metric_embedding, schoenberg_embedding, Construction};
use alphadim::metric::{covering_number, packing_number, Distances};
use alphadim::{Graph, Limits, Mode};
use proptest::prelude::*;

use common::*;

const ALPHAS: [f64; 7] = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75];

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in (u + 1)..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn interval(g: &Graph, alpha: f64) -> [f64; 2] {
    report(g, alpha, &ReportOptions::default()).unwrap().interval.unwrap()
}

fn diameter_at_most_two(g: &Graph) -> bool {
    let adj = adjacency(g);
    (0..g.n()).all(|s| bfs(&adj, s).iter().all(|d| d.is_some_and(|d| d <= 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn envelopes_are_monotone_in_alpha(g in graph(10)) {
        let iv: Vec<[f64; 2]> = ALPHAS.iter().map(|&a| interval(&g, a)).collect();
        for w in iv.windows(2) {
            prop_assert!(w[0][0] <= w[1][0] + 1e-12, "lower {:?}", iv);
            prop_assert!(w[0][1] <= w[1][1] + 1e-12, "upper {:?}", iv);
        }
    }

    #[test]
    fn lower_never_exceeds_verified_upper(g in graph(12), i in 0..ALPHAS.len()) {
        let rep = report(&g, ALPHAS[i], &ReportOptions::default()).unwrap();
        let [lo, hi] = rep.interval.unwrap();
        prop_assert!(lo <= hi, "{lo} > {hi}");
        for u in rep.upper_bounds.iter().filter(|u| u.verified == Some(true)) {
            prop_assert!(lo <= u.value, "{lo} > {} ({})", u.value, u.tag);
        }
        let n = g.n().max(1);
        prop_assert!(lo <= (n as f64).log2().ceil() + 1.0);
    }

    #[test]
    fn constant_diameter_sandwich(g in graph(14).prop_filter("diameter <= 2", diameter_at_most_two),
                                  i in 0..ALPHAS.len()) {
        let alpha = ALPHAS[i];
        let theta = constant_diameter_theta(&g, alpha, &Limits::default()).unwrap();
        let [lo, hi] = interval(&g, alpha);
        prop_assert!(lo >= theta / 3.0 - 1e-9, "lower {lo} theta {theta}");
        prop_assert!(hi <= 7.0 * (1.0 + theta), "upper {hi} theta {theta}");
    }

    #[test]
    fn passing_maps_witness_clique_partition(g in graph(12), i in 0..ALPHAS.len(), seed in any::<u64>()) {
        let alpha = ALPHAS[i];
        let limits = Limits::default();
        let c = if alpha < 1.0 { Construction::Collapse } else { Construction::Prop6 };
        let e = c.build(&g, alpha, seed, &limits).unwrap();
        let cert = e.check(&g, alpha).unwrap();
        prop_assume!(cert.pass);
        let r = cert.r.unwrap();
        let mut image = e.vertex_map.clone();
        image.sort_unstable();
        image.dedup();
        let cover = covering_number(&e.target, &image, alpha * r / 2.0, Mode::Exact, &limits).unwrap();
        prop_assert!(cover >= min_clique_partition(&adjacency(&g)));
    }

    #[test]
    fn passing_maps_witness_neighborhood_classes(g in graph(12), alpha in 1.05f64..1.95) {
        let limits = Limits::default();
        let e = pseudo_metric_embedding(&g, alpha, &limits).unwrap();
        let cert = e.check(&g, alpha).unwrap();
        prop_assert!(cert.pass);
        let r = cert.r.unwrap();
        let mut image = e.vertex_map.clone();
        image.sort_unstable();
        image.dedup();
        let all: Vec<usize> = (0..g.n()).collect();
        let classes = closed_classes(&adjacency(&g), &all);
        let packing = packing_number(&e.target, &image, (alpha - 1.0) * r, Mode::Exact, &limits).unwrap();
        prop_assert!(packing >= classes, "packing {packing} < classes {classes}");
    }

    #[test]
    fn covering_shrinks_as_radius_grows(g in graph(12), alpha in 1.05f64..1.95) {
        let limits = Limits::default();
        let e = pseudo_metric_embedding(&g, alpha, &limits).unwrap();
        let pts: Vec<usize> = (0..e.target.len()).collect();
        let mut last = usize::MAX;
        for eps in [0.05, 0.2, 0.5, 1.0, 1.5, 2.5] {
            let c = covering_number(&e.target, &pts, eps, Mode::Exact, &limits).unwrap();
            prop_assert!(c <= last);
            last = c;
        }
    }

    #[test]
    fn reports_are_deterministic(g in graph(10), i in 0..ALPHAS.len(), seed in any::<u64>()) {
        let opts = ReportOptions { seed, ..Default::default() };
        let a = report(&g, ALPHAS[i], &opts).unwrap().to_json().unwrap();
        let b = report(&g, ALPHAS[i], &opts).unwrap().to_json().unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn complete_bipartite_schoenberg_ceiling() {
    for m in 2..=6 {
        let edges: Vec<(usize, usize)> = (0..m).flat_map(|a| (m..2 * m).map(move |b| (a, b))).collect();
        let g = Graph::from_edge_list(2 * m, &edges).unwrap();
        let got = schoenberg_embedding(&g).unwrap().alpha_max(&g);
        let want = (1.0 - 1.0 / m as f64).powf(-0.5);
        assert!((got - want).abs() < 1e-9, "m {m}: {got} vs {want}");
    }
}
