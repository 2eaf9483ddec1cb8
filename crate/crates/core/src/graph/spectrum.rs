use nalgebra::{DMatrix, SymmetricEigen};

use super::Graph;

pub(crate) fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

/// Two largest adjacency eigenvalues `(lambda_max, lambda_2)`. For a single
/// vertex both are 0.
pub fn spectrum_top2(g: &Graph) -> (f64, f64) {
    match g.n() {
        0 | 1 => (0.0, 0.0),
        _ => {
            let eig = SymmetricEigen::new(adjacency_matrix(g));
            let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            vals.sort_by(|a, b| b.total_cmp(a));
            (vals[0], vals[1])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, gen_named, Family};

    #[test]
    fn complete_graph_spectrum() {
        for n in 2..12 {
            let (l1, l2) = spectrum_top2(&Graph::complete(n));
            assert!((l1 - (n as f64 - 1.0)).abs() < 1e-9);
            assert!((l2 + 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn cycle_spectrum_matches_circulant_closed_form() {
        for n in 3..16 {
            let mut closed: Vec<f64> = (0..n)
                .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
                .collect();
            closed.sort_by(|a, b| b.total_cmp(a));
            let (l1, l2) = spectrum_top2(&gen_named(Family::Cycle, n).unwrap());
            assert!((l1 - 2.0).abs() < 1e-9);
            assert!((l2 - closed[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_and_bounded_by_degree() {
        assert_eq!(spectrum_top2(&Graph::empty(5)), (0.0, 0.0));
        for s in 0..20 {
            let g = gen_gnp(15, 0.3, s).unwrap();
            let (l1, l2) = spectrum_top2(&g);
            assert!(l1 <= g.max_degree() as f64 + 1e-9);
            assert!(l2 <= l1 + 1e-12);
            assert!(l2.abs() <= g.max_degree() as f64 + 1e-9);
        }
    }
}
