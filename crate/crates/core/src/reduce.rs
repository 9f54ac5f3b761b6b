//! Clique-preserving reductions.
//!
//! Both reductions take a bound `k` and may only destroy cliques of at most
//! `k` vertices: the caller already holds a clique that large.

use rand::{Rng, RngCore};

use crate::graph::Graph;
use crate::rng_from_seed;

/// Vertices of the `k`-core, ascending.
///
/// Peels vertices of degree `< k` with a worklist; each edge is looked at a
/// constant number of times, so this is `O(|V| + |E|)`.
pub fn k_core_vertices(g: &Graph, k: usize) -> Vec<usize> {
    let n = g.num_vertices();
    let mut degree = g.degrees();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] < k).collect();
    for &v in &stack {
        removed[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if removed[u] {
                continue;
            }
            degree[u] -= 1;
            if degree[u] < k {
                removed[u] = true;
                stack.push(u);
            }
        }
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// Maximal subgraph whose vertices all have degree `>= k` (possibly empty).
/// Keeps every clique of `k + 1` or more vertices.
pub fn k_core(g: &Graph, k: usize) -> Graph {
    let keep = k_core_vertices(g, k);
    if keep.len() == g.num_vertices() {
        return g.clone();
    }
    g.induced_sorted(&keep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub graph: Graph,
    pub removed_vertices: usize,
    pub removed_edges: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Prune edges around every vertex instead of one random vertex.
    pub exhaustive: bool,
}

/// `lower_bound`-core, then drop edges `(v, w)` at a random vertex `v` whose
/// endpoints share fewer than `lower_bound - 2` neighbors, then the core
/// again. Cliques with more than `lower_bound` vertices survive.
pub fn reduce_graph(g: &Graph, lower_bound: usize, seed: u64) -> ReductionOutcome {
    reduce_graph_with(g, lower_bound, &mut rng_from_seed(seed), ReduceOptions::default())
}

/// [`reduce_graph`] drawing from a caller-owned generator.
///
/// Edge tests all read the core extracted in the first step; removals are
/// applied together afterwards.
pub fn reduce_graph_with<R: RngCore>(
    g: &Graph,
    lower_bound: usize,
    rng: &mut R,
    options: ReduceOptions,
) -> ReductionOutcome {
    let core = k_core(g, lower_bound);
    let mut graph = core;
    if graph.num_vertices() > 0 && lower_bound > 2 {
        let threshold = lower_bound - 2;
        let mut doomed = Vec::new();
        let scan = |v: usize, doomed: &mut Vec<(usize, usize)>| {
            for &w in graph.neighbors(v) {
                if graph.count_common_neighbors(v, w) < threshold {
                    doomed.push((v.min(w), v.max(w)));
                }
            }
        };
        if options.exhaustive {
            for v in 0..graph.num_vertices() {
                scan(v, &mut doomed);
            }
            doomed.sort_unstable();
            doomed.dedup();
        } else {
            let v = rng.random_range(0..graph.num_vertices() as u64) as usize;
            scan(v, &mut doomed);
        }
        if !doomed.is_empty() {
            let pruned = graph.remove_edges(&doomed).expect("edges come from the graph");
            graph = k_core(&pruned, lower_bound);
        }
    } else if graph.num_vertices() > 0 {
        // No edge can fall below a threshold of zero; the draw is still
        // consumed so generator streams line up across bounds.
        let _ = rng.random_range(0..graph.num_vertices() as u64);
    }
    ReductionOutcome {
        removed_vertices: g.num_vertices() - graph.num_vertices(),
        removed_edges: g.num_edges() - graph.num_edges(),
        graph,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, gnp_random, path, star};

    fn k4_with_pendant() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    fn disjoint_k5_k3() -> Graph {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        edges.extend([(5, 6), (5, 7), (6, 7)]);
        Graph::from_edges(8, edges).unwrap()
    }

    #[test]
    fn k_core_examples() {
        assert_eq!(k_core(&path(3), 2).num_vertices(), 0);
        assert_eq!(k_core(&complete(5), 4), complete(5));
        let core = k_core(&k4_with_pendant(), 3);
        assert_eq!(core.labels(), &[0, 1, 2, 3]);
        assert!(core.is_complete());
        assert_eq!(k_core(&path(3), 0), path(3));
    }

    #[test]
    fn reduce_examples() {
        let g = gnp_random(30, 0.3, 1).unwrap();
        let out = reduce_graph(&g, 0, 9);
        assert_eq!(out.graph, g);
        assert_eq!((out.removed_vertices, out.removed_edges), (0, 0));

        let out = reduce_graph(&disjoint_k5_k3(), 4, 2);
        assert_eq!(out.graph.labels(), &[0, 1, 2, 3, 4]);
        assert!(out.graph.is_complete());
        assert_eq!((out.removed_vertices, out.removed_edges), (3, 3));

        let out = reduce_graph(&star(10), 2, 3);
        assert_eq!(out.graph.num_vertices(), 0);
        assert_eq!(out.removed_edges, 9);
    }

    #[test]
    fn exhaustive_prunes_at_least_as_much() {
        for seed in 0..20 {
            let g = gnp_random(40, 0.3, seed).unwrap();
            let one = reduce_graph(&g, 4, seed);
            let all = reduce_graph_with(
                &g,
                4,
                &mut rng_from_seed(seed),
                ReduceOptions { exhaustive: true },
            );
            assert!(all.graph.num_edges() <= one.graph.num_edges());
            all.graph.validate().unwrap();
        }
    }
}
