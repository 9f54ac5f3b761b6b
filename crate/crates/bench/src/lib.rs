//! Fixed instances shared by the criterion benchmarks.

use cliquesplit::graph::gnp_random;
use cliquesplit::Graph;

/// `G(n, p)` instances keyed by seed, so every run measures the same graphs.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    gnp_random(n, p, seed).expect("probability in range")
}

/// Sparse instance with average degree `d`, as in the runtime-scaling runs.
pub fn fixed_degree_graph(n: usize, d: f64, seed: u64) -> Graph {
    random_graph(n, d / (n - 1) as f64, seed)
}
