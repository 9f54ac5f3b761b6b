//! Decomposition of maximum clique into bounded subproblems.
//!
//! Two exact decompositions are combined:
//!
//! - **CH-partitioning**: disjoint cores `C_1..C_s` covering `V`, each with
//!   its halo `H_i` (outside neighbors of the core). Every clique lies
//!   inside some `C_i ∪ H_i`, so `ω(G) = max_i ω(G[C_i ∪ H_i])`.
//! - **Vertex splitting**: for a vertex `v`, `G1 = G[N(v)]` and
//!   `G2 = G - v` give `ω(G) = max(ω(G1) + 1, ω(G2))`.
//!
//! [`split_solve`] runs k-core reduction, one CH-partitioning and then
//! repeated vertex splitting until every piece fits the solver.

mod driver;
mod search;
mod shrink;

pub use driver::{
    greedy_clique, multi_start_greedy_clique, split_solve, split_solve_detailed, Parts, SplitConfig, SplitOutcome,
    Subproblem, SubproblemQueue, SubproblemSolver,
};
pub use search::{binary_search_max_clique, sweep_vertex_limit};

use std::collections::VecDeque;

use rand::Rng;

use crate::graph::Graph;
use crate::{rng_from_seed, Error, Result};

/// Cores and halos over local vertex ids of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CHPartition {
    cores: Vec<Vec<usize>>,
    halos: Vec<Vec<usize>>,
}

impl CHPartition {
    /// Builds the partition for the given cores, computing halos exactly.
    /// Cores must be non-empty, disjoint and cover every vertex.
    pub fn from_cores(g: &Graph, cores: Vec<Vec<usize>>) -> Result<Self> {
        let n = g.num_vertices();
        let mut part = vec![usize::MAX; n];
        for (i, core) in cores.iter().enumerate() {
            if core.is_empty() {
                return Err(Error::InvalidArgument(format!("core {i} is empty")));
            }
            for &v in core {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        num_vertices: n,
                    });
                }
                if part[v] != usize::MAX {
                    return Err(Error::InvalidArgument(format!("vertex {v} is in two cores")));
                }
                part[v] = i;
            }
        }
        if let Some(v) = part.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidArgument(format!("vertex {v} is in no core")));
        }
        Ok(Self::from_assignment(g, &part, cores.len()))
    }

    fn from_assignment(g: &Graph, part: &[usize], s: usize) -> Self {
        let mut cores = vec![Vec::new(); s];
        let mut halos = vec![Vec::new(); s];
        for (v, &p) in part.iter().enumerate() {
            cores[p].push(v);
        }
        let mut mark = vec![usize::MAX; g.num_vertices()];
        for (i, core) in cores.iter().enumerate() {
            for &v in core {
                for &u in g.neighbors(v) {
                    if part[u] != i && mark[u] != i {
                        mark[u] = i;
                        halos[i].push(u);
                    }
                }
            }
            halos[i].sort_unstable();
        }
        CHPartition { cores, halos }
    }

    pub fn cores(&self) -> &[Vec<usize>] {
        &self.cores
    }

    pub fn halos(&self) -> &[Vec<usize>] {
        &self.halos
    }

    pub fn num_parts(&self) -> usize {
        self.cores.len()
    }

    /// `max_i |C_i| + |H_i|`.
    pub fn cost(&self) -> usize {
        self.cores
            .iter()
            .zip(&self.halos)
            .map(|(c, h)| c.len() + h.len())
            .max()
            .unwrap_or(0)
    }

    /// `sum_i |C_i| + |H_i|`: vertices over all parts, with repeats.
    pub fn total_size(&self) -> usize {
        self.cores.iter().chain(&self.halos).map(Vec::len).sum()
    }

    /// `sum_i (|C_i| + |H_i|)^2`, a proxy for the work of decomposing every
    /// part separately.
    pub fn squared_size(&self) -> usize {
        self.cores
            .iter()
            .zip(&self.halos)
            .map(|(c, h)| (c.len() + h.len()).pow(2))
            .sum()
    }

    /// `C_i ∪ H_i`, sorted.
    pub fn part_vertices(&self, i: usize) -> Vec<usize> {
        let mut all: Vec<usize> = self.cores[i].iter().chain(&self.halos[i]).copied().collect();
        all.sort_unstable();
        all
    }

    /// Subgraph induced by `C_i ∪ H_i`.
    pub fn part_graph(&self, g: &Graph, i: usize) -> Graph {
        g.induced_sorted(&self.part_vertices(i))
    }
}

/// Heuristic CH-partitioning into `s` non-empty cores.
///
/// Seeds are spread by farthest-first BFS (unreachable vertices count as
/// farthest, so every component gets a seed while seeds last). Regions grow
/// breadth-first, always extending the currently smallest one. A single
/// refinement pass then moves boundary vertices to a neighboring core when
/// that lowers the larger of the two affected part sizes. Halos are
/// computed exactly from the final cores.
pub fn ch_partition(g: &Graph, s: usize, seed: u64) -> Result<CHPartition> {
    let n = g.num_vertices();
    if s == 0 || s > n {
        return Err(Error::InvalidArgument(format!(
            "number of parts {s} must lie in [1, {n}]"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let seeds = spread_seeds(g, s, &mut rng);
    let mut part = grow_regions(g, &seeds);
    refine(g, &mut part, s);
    Ok(CHPartition::from_assignment(g, &part, s))
}

fn spread_seeds<R: Rng>(g: &Graph, s: usize, rng: &mut R) -> Vec<usize> {
    let n = g.num_vertices();
    let mut distance = vec![usize::MAX; n];
    let mut is_seed = vec![false; n];
    let mut seeds = Vec::with_capacity(s);
    let mut next = rng.random_range(0..n as u64) as usize;
    let mut queue = VecDeque::new();
    loop {
        seeds.push(next);
        is_seed[next] = true;
        if seeds.len() == s {
            return seeds;
        }
        // Incremental BFS: only vertices that get closer are revisited.
        distance[next] = 0;
        queue.push_back(next);
        while let Some(v) = queue.pop_front() {
            let d = distance[v] + 1;
            for &u in g.neighbors(v) {
                if d < distance[u] {
                    distance[u] = d;
                    queue.push_back(u);
                }
            }
        }
        next = (0..n)
            .filter(|&v| !is_seed[v])
            .max_by_key(|&v| (distance[v], std::cmp::Reverse(v)))
            .expect("s <= n leaves a non-seed vertex");
    }
}

fn grow_regions(g: &Graph, seeds: &[usize]) -> Vec<usize> {
    const UNASSIGNED: usize = usize::MAX;
    let n = g.num_vertices();
    let s = seeds.len();
    let mut part = vec![UNASSIGNED; n];
    let mut sizes = vec![0usize; s];
    let mut frontier: Vec<VecDeque<usize>> = vec![VecDeque::new(); s];
    for (i, &v) in seeds.iter().enumerate() {
        part[v] = i;
        sizes[i] = 1;
        frontier[i].extend(g.neighbors(v));
    }
    let mut assigned = s;
    let mut next_unassigned = 0;
    while assigned < n {
        // Smallest region that can still grow.
        let region = (0..s)
            .filter(|&i| !frontier[i].is_empty())
            .min_by_key(|&i| (sizes[i], i));
        let Some(i) = region else {
            // Nothing reachable: restart the smallest region elsewhere.
            while part[next_unassigned] != UNASSIGNED {
                next_unassigned += 1;
            }
            let i = (0..s).min_by_key(|&i| (sizes[i], i)).expect("s >= 1");
            frontier[i].push_back(next_unassigned);
            continue;
        };
        while let Some(v) = frontier[i].pop_front() {
            if part[v] == UNASSIGNED {
                part[v] = i;
                sizes[i] += 1;
                assigned += 1;
                frontier[i].extend(g.neighbors(v).iter().filter(|&&u| part[u] == UNASSIGNED));
                break;
            }
        }
    }
    part
}

/// Per-vertex count of neighbors in each core, kept sparse.
struct CoreLinks {
    links: Vec<Vec<(usize, usize)>>,
}

impl CoreLinks {
    fn new(g: &Graph, part: &[usize]) -> Self {
        let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.num_vertices()];
        for (v, &core) in part.iter().enumerate() {
            for &u in g.neighbors(v) {
                Self::bump(&mut links[u], core, 1);
            }
        }
        CoreLinks { links }
    }

    fn get(&self, v: usize, core: usize) -> usize {
        self.links[v]
            .iter()
            .find(|&&(c, _)| c == core)
            .map_or(0, |&(_, k)| k)
    }

    fn bump(list: &mut Vec<(usize, usize)>, core: usize, delta: isize) {
        if let Some(pos) = list.iter().position(|&(c, _)| c == core) {
            let k = (list[pos].1 as isize + delta) as usize;
            if k == 0 {
                list.swap_remove(pos);
            } else {
                list[pos].1 = k;
            }
        } else {
            debug_assert!(delta > 0);
            list.push((core, delta as usize));
        }
    }
}

fn refine(g: &Graph, part: &mut [usize], s: usize) {
    if s < 2 {
        return;
    }
    let n = g.num_vertices();
    let mut links = CoreLinks::new(g, part);
    let mut core_sizes = vec![0usize; s];
    for &p in part.iter() {
        core_sizes[p] += 1;
    }
    // sizes[i] = |C_i| + |H_i|
    let mut sizes = core_sizes.clone();
    for (own, &home) in links.links.iter().zip(part.iter()) {
        for &(c, _) in own {
            if c != home {
                sizes[c] += 1;
            }
        }
    }
    for v in 0..n {
        let from = part[v];
        if core_sizes[from] == 1 {
            continue;
        }
        let in_from = links.get(v, from);
        let lost_halo = g
            .neighbors(v)
            .iter()
            .filter(|&&u| part[u] != from && links.get(u, from) == 1)
            .count();
        let new_from = sizes[from] - 1 + usize::from(in_from > 0) - lost_halo;
        let targets: Vec<usize> = links.links[v]
            .iter()
            .map(|&(c, _)| c)
            .filter(|&c| c != from)
            .collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for to in targets {
            let gained_halo = g
                .neighbors(v)
                .iter()
                .filter(|&&u| part[u] != to && links.get(u, to) == 0)
                .count();
            let new_to = sizes[to] + 1 - usize::from(links.get(v, to) > 0) + gained_halo;
            let worst = new_from.max(new_to);
            if worst < sizes[from].max(sizes[to]) && best.is_none_or(|(_, _, w)| worst < w) {
                best = Some((to, new_to, worst));
            }
        }
        if let Some((to, new_to, _)) = best {
            sizes[from] = new_from;
            sizes[to] = new_to;
            core_sizes[from] -= 1;
            core_sizes[to] += 1;
            part[v] = to;
            for &u in g.neighbors(v) {
                CoreLinks::bump(&mut links.links[u], from, -1);
                CoreLinks::bump(&mut links.links[u], to, 1);
            }
        }
    }
}

/// `max_i k_i` over the per-part clique sizes.
pub fn combine_ch(part_clique_sizes: &[usize]) -> Result<usize> {
    part_clique_sizes
        .iter()
        .copied()
        .max()
        .ok_or_else(|| Error::InvalidArgument("no part results to combine".into()))
}

/// `(G[N(v)], G - v)`.
pub fn vertex_split(g: &Graph, v: usize) -> Result<(Graph, Graph)> {
    let without = g.remove_vertex(v)?;
    let neighborhood = g.induced_sorted(g.neighbors(v));
    Ok((neighborhood, without))
}

/// `max(k1 + 1, k2)` for `k1 = ω(G[N(v)])`, `k2 = ω(G - v)`.
pub fn combine_split(k1: usize, k2: usize) -> usize {
    (k1 + 1).max(k2)
}

/// Vertex to split on, by attempt: 0 picks a maximum-degree vertex, 1 a
/// lower-median-degree vertex, 2 and later a minimum-degree vertex. Ties go
/// to the smallest id.
pub fn choose_vertex(g: &Graph, attempt: usize) -> Result<usize> {
    if g.is_empty() {
        return Err(Error::InvalidArgument("cannot choose a vertex of an empty graph".into()));
    }
    let degrees = g.degrees();
    let target = match attempt {
        0 => *degrees.iter().max().expect("non-empty"),
        1 => {
            let mut sorted = degrees.clone();
            sorted.sort_unstable();
            sorted[(sorted.len() - 1) / 2]
        }
        _ => *degrees.iter().min().expect("non-empty"),
    };
    Ok(degrees.iter().position(|&d| d == target).expect("degree occurs"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, gnp_random, path, star, wheel};

    fn two_triangles() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn single_part() {
        let g = gnp_random(20, 0.3, 1).unwrap();
        let p = ch_partition(&g, 1, 0).unwrap();
        assert_eq!(p.cores(), &[(0..20).collect::<Vec<_>>()]);
        assert!(p.halos()[0].is_empty());
        assert_eq!(p.cost(), 20);
    }

    #[test]
    fn components_become_parts() {
        let p = ch_partition(&two_triangles(), 2, 7).unwrap();
        assert_eq!(p.cost(), 3);
        assert!(p.halos().iter().all(Vec::is_empty));
    }

    #[test]
    fn path_halos() {
        let p = CHPartition::from_cores(&path(4), vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(p.halos(), &[vec![2], vec![1]]);
        assert_eq!(p.cost(), 3);
    }

    #[test]
    fn invalid_cores() {
        let g = path(4);
        assert!(CHPartition::from_cores(&g, vec![vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(CHPartition::from_cores(&g, vec![vec![0, 1], vec![2]]).is_err());
        assert!(CHPartition::from_cores(&g, vec![vec![0, 1, 2, 3], vec![]]).is_err());
        assert!(ch_partition(&g, 5, 0).is_err());
        assert!(ch_partition(&g, 0, 0).is_err());
    }

    #[test]
    fn heuristic_partitions_are_valid() {
        for seed in 0..30 {
            let g = gnp_random(60, 0.08, seed).unwrap();
            for s in [2, 3, 5, 60] {
                let p = ch_partition(&g, s, seed).unwrap();
                let rebuilt = CHPartition::from_cores(&g, p.cores().to_vec()).unwrap();
                assert_eq!(rebuilt, p);
                assert_eq!(p.num_parts(), s);
            }
        }
    }

    #[test]
    fn combiners() {
        assert_eq!(combine_ch(&[3, 5, 2]).unwrap(), 5);
        assert_eq!(combine_ch(&[4]).unwrap(), 4);
        assert!(combine_ch(&[]).is_err());
        assert_eq!(combine_split(3, 3), 4);
        assert_eq!(combine_split(0, 3), 3);
    }

    #[test]
    fn split_examples() {
        let (g1, g2) = vertex_split(&complete(4), 2).unwrap();
        assert!(g1.is_complete() && g1.num_vertices() == 3);
        assert!(g2.is_complete() && g2.num_vertices() == 3);

        let (g1, g2) = vertex_split(&star(5), 0).unwrap();
        assert_eq!((g1.num_vertices(), g1.num_edges()), (4, 0));
        assert_eq!((g2.num_vertices(), g2.num_edges()), (4, 0));

        let (g1, g2) = vertex_split(&wheel(5), 0).unwrap();
        assert_eq!(g1, crate::graph::cycle(4).with_labels(vec![1, 2, 3, 4]).unwrap());
        assert_eq!(g1, g2);
        assert!(vertex_split(&star(5), 5).is_err());
    }

    #[test]
    fn choose_vertex_examples() {
        assert_eq!(choose_vertex(&star(5), 0).unwrap(), 0);
        let k4 = complete(4);
        assert_eq!(choose_vertex(&k4, 0).unwrap(), 0);
        assert!(k4.is_complete());
        // Degrees [1, 2, 2, 3, 5] on vertices 0..5 plus filler.
        let g = Graph::from_edges(
            6,
            [(0, 4), (1, 4), (1, 3), (2, 4), (2, 3), (3, 4), (4, 5)],
        )
        .unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 2, 3, 5, 1]);
        assert_eq!(choose_vertex(&g, 0).unwrap(), 4);
        // Sorted [1, 1, 2, 2, 3, 5]: lower median is 2.
        assert_eq!(g.degree(choose_vertex(&g, 1).unwrap()), 2);
        assert_eq!(choose_vertex(&g, 2).unwrap(), 0);
        assert!(choose_vertex(&Graph::new(0), 0).is_err());
    }

    #[test]
    fn five_vertex_degree_sequence() {
        // Exactly [1, 2, 2, 3, 5] is not graphic on 5 vertices with max 5,
        // so use [1, 2, 2, 3, 4]: lower median is the third value, 2.
        let g = Graph::from_edges(5, [(0, 4), (1, 4), (1, 3), (2, 4), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 2, 3, 4]);
        assert_eq!(choose_vertex(&g, 0).unwrap(), 4);
        assert_eq!(choose_vertex(&g, 1).unwrap(), 1);
    }
}
