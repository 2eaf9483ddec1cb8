//! Dimension-efficient α-preserving embeddings of graphs.
//!
//! A map `f` from the vertices of a graph `G` into a metric space is
//! α-preserving when some threshold `r > 0` puts every edge at distance
//! below `r` and every non-edge at distance at least `α·r`.

// `!(x > y)` is kept where NaN must be rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod bits;
pub mod bounds;
pub mod construct;
pub mod error;
pub mod experiment;
pub mod graph;
#[doc(hidden)]
pub mod inf;
pub mod metric;
pub mod partition;
pub mod preserve;
pub mod seed;

pub use error::{Error, Result};
pub use graph::Graph;
pub use partition::{Mode, VertexPartition};

/// Size limits for the exponential exact algorithms and the node budget for
/// branch-and-bound searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub clique_cover_exact: usize,
    pub covering_exact: usize,
    pub doubling_exact: usize,
    pub search_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            clique_cover_exact: 20,
            covering_exact: 22,
            doubling_exact: 14,
            search_nodes: 50_000_000,
        }
    }
}
