//! Fixed-size simulated annealing for cliques.
//!
//! The state is a set `S` of exactly `m` vertices; its energy is the number
//! of non-adjacent pairs inside `S`. A move swaps one vertex of `S` for one
//! outside vertex and is accepted by the Metropolis rule. The temperature
//! follows `T <- alpha * T` and is reset to its initial value once it has
//! fallen a thousandfold. Energy zero means `S` is a clique.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{initial_temperature, SolverConfig, DEFAULT_SA_STEPS};
use crate::graph::Graph;
use crate::{rng_from_seed, Error, Result};

pub const SA_CLIQUE_NAME: &str = "sa-clique";

/// Searches for a clique of exactly `m` vertices. Returns its labels, or
/// `None` when the step budget runs out first. Any returned set is checked
/// against the graph, so a `Some` is always a genuine clique.
pub fn sa_clique(g: &Graph, m: usize, cfg: &SolverConfig) -> Result<Option<Vec<usize>>> {
    let n = g.num_vertices();
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "clique size {m} must lie in [1, {n}]"
        )));
    }
    cfg.validate()?;
    let mut rng = rng_from_seed(cfg.seed);
    let budget = cfg.budget.unwrap_or(DEFAULT_SA_STEPS);

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut inside: Vec<usize> = order[..m].to_vec();
    let mut outside: Vec<usize> = order[m..].to_vec();
    // links[u] = neighbors of u inside S.
    let mut links = vec![0usize; n];
    for &v in &inside {
        for &u in g.neighbors(v) {
            links[u] += 1;
        }
    }
    let inner_edges: usize = inside.iter().map(|&v| links[v]).sum::<usize>() / 2;
    let mut energy = (m * (m - 1) / 2 - inner_edges) as i64;

    let finish = |inside: &[usize]| -> Option<Vec<usize>> {
        let mut labels: Vec<usize> = inside.iter().map(|&v| g.label(v)).collect();
        labels.sort_unstable();
        g.is_clique(inside).then_some(labels)
    };
    if energy == 0 {
        return Ok(finish(&inside));
    }
    if outside.is_empty() {
        return Ok(None);
    }

    // Missing-pair change from swapping `inside[a]` out and `outside[b]` in.
    let delta = |inside: &[usize], outside: &[usize], links: &[usize], a: usize, b: usize| {
        let (u, w) = (inside[a], outside[b]);
        let shared = g.has_edge(u, w) as i64;
        links[u] as i64 - (links[w] as i64 - shared)
    };

    let t0 = match cfg.initial_temperature {
        Some(t) => t,
        None => {
            let probes: Vec<f64> = (0..100)
                .map(|_| {
                    let a = rng.random_range(0..m as u64) as usize;
                    let b = rng.random_range(0..outside.len() as u64) as usize;
                    delta(&inside, &outside, &links, a, b) as f64
                })
                .collect();
            initial_temperature(&probes)
        }
    };
    let mut temperature = t0;
    let floor = t0 * 1e-3;
    for _ in 0..budget {
        let a = rng.random_range(0..m as u64) as usize;
        let b = rng.random_range(0..outside.len() as u64) as usize;
        let d = delta(&inside, &outside, &links, a, b);
        let accept = d <= 0 || rng.random::<f64>() < (-(d as f64) / temperature).exp();
        if accept {
            let (u, w) = (inside[a], outside[b]);
            for &x in g.neighbors(u) {
                links[x] -= 1;
            }
            for &x in g.neighbors(w) {
                links[x] += 1;
            }
            inside[a] = w;
            outside[b] = u;
            energy += d;
            if energy == 0 {
                return Ok(finish(&inside));
            }
        }
        temperature *= cfg.alpha;
        if temperature < floor {
            temperature = t0;
        }
    }
    Ok(None)
}
