//! Undirected simple graphs.
//!
//! A [`Graph`] is immutable once built. Vertices are `0..num_vertices` and
//! every vertex carries a label: the id it had in the graph the caller
//! originally built. Extracting induced subgraphs composes labels, so a
//! clique found deep inside a decomposition maps straight back to input ids.

mod dimacs;
mod generators;

pub use dimacs::{parse_dimacs, read_dimacs, write_dimacs};
pub use generators::{
    complete, cycle, empty, gnp_random, hamming_graph, path, petersen, star, wheel,
    MAX_HAMMING_WORD_LENGTH,
};

use std::collections::HashMap;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<usize>,
    num_edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            labels: (0..n).collect(),
            num_edges: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop on vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adjacency(adjacency, (0..n).collect()))
    }

    /// `adjacency` must already be symmetric, sorted and loop-free.
    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<usize>>, labels: Vec<usize>) -> Self {
        debug_assert_eq!(adjacency.len(), labels.len());
        let degree_sum: usize = adjacency.iter().map(Vec::len).sum();
        Graph {
            adjacency,
            labels,
            num_edges: degree_sum / 2,
        }
    }

    pub(crate) fn into_adjacency(self) -> Vec<Vec<usize>> {
        self.adjacency
    }

    /// Replaces the labels. They must be distinct and one per vertex.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.num_vertices() {
            return Err(Error::LengthMismatch {
                expected: self.num_vertices(),
                got: labels.len(),
            });
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("labels must be distinct".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        // Search the shorter list.
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Local vertex carrying `label`, if any.
    pub fn index_of_label(&self, label: usize) -> Option<usize> {
        if self.labels.get(label) == Some(&label) {
            return Some(label);
        }
        self.labels.iter().position(|&l| l == label)
    }

    /// Checks symmetry, loop-freeness, sortedness, id range and label
    /// distinctness.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vertices();
        let mut degree_sum = 0;
        for (v, list) in self.adjacency.iter().enumerate() {
            degree_sum += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "adjacency of {v} is not strictly sorted"
                )));
            }
            for &u in list {
                check_vertex(u, n)?;
                if u == v {
                    return Err(Error::InvalidArgument(format!("self-loop on vertex {v}")));
                }
                if self.adjacency[u].binary_search(&v).is_err() {
                    return Err(Error::InvalidArgument(format!("edge {v}-{u} is not symmetric")));
                }
            }
        }
        if degree_sum != 2 * self.num_edges {
            return Err(Error::InvalidArgument("edge count out of sync".into()));
        }
        let mut labels = self.labels.clone();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("labels are not distinct".into()));
        }
        Ok(())
    }

    /// Subgraph induced by `vertices` (local ids, any order, duplicates
    /// ignored). New vertex `i` is the `i`-th smallest selected id and keeps
    /// its label.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let n = self.num_vertices();
        let mut selected = vertices.to_vec();
        selected.sort_unstable();
        selected.dedup();
        if let Some(&last) = selected.last() {
            check_vertex(last, n)?;
        }
        Ok(self.induced_sorted(&selected))
    }

    pub(crate) fn induced_sorted(&self, selected: &[usize]) -> Graph {
        const ABSENT: usize = usize::MAX;
        let mut remap = vec![ABSENT; self.num_vertices()];
        for (new, &old) in selected.iter().enumerate() {
            remap[old] = new;
        }
        let adjacency = selected
            .iter()
            .map(|&old| {
                self.adjacency[old]
                    .iter()
                    .filter_map(|&u| match remap[u] {
                        ABSENT => None,
                        new => Some(new),
                    })
                    .collect()
            })
            .collect();
        let labels = selected.iter().map(|&old| self.labels[old]).collect();
        Graph::from_sorted_adjacency(adjacency, labels)
    }

    /// Graph with vertex `v` deleted.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        check_vertex(v, self.num_vertices())?;
        let keep: Vec<usize> = (0..self.num_vertices()).filter(|&u| u != v).collect();
        Ok(self.induced_sorted(&keep))
    }

    /// Graph with the listed edges deleted; absent edges are ignored.
    pub fn remove_edges(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let n = self.num_vertices();
        let mut adjacency = self.adjacency.clone();
        for &(u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if let Ok(pos) = adjacency[u].binary_search(&v) {
                adjacency[u].remove(pos);
            }
            if let Ok(pos) = adjacency[v].binary_search(&u) {
                adjacency[v].remove(pos);
            }
        }
        Ok(Graph::from_sorted_adjacency(adjacency, self.labels.clone()))
    }

    /// Same vertices; `u != v` adjacent iff not adjacent here. Labels kept.
    pub fn complement(&self) -> Graph {
        let n = self.num_vertices();
        let adjacency = (0..n)
            .map(|v| {
                let mut present = self.adjacency[v].iter().peekable();
                (0..n)
                    .filter(|&u| {
                        if present.peek() == Some(&&u) {
                            present.next();
                            false
                        } else {
                            u != v
                        }
                    })
                    .collect()
            })
            .collect();
        Graph::from_sorted_adjacency(adjacency, self.labels.clone())
    }

    /// `N(u) ∩ N(v)`, sorted.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        let n = self.num_vertices();
        check_vertex(u, n)?;
        check_vertex(v, n)?;
        let (a, b) = (&self.adjacency[u], &self.adjacency[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn count_common_neighbors(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.adjacency[u], &self.adjacency[v]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// True when the local vertex set is pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        let n = self.num_vertices();
        vertices.iter().all(|&v| v < n)
            && vertices.iter().enumerate().all(|(i, &u)| {
                vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v))
            })
    }

    /// True when the label set names distinct, pairwise adjacent vertices.
    pub fn is_clique_by_labels(&self, labels: &[usize]) -> bool {
        let index: HashMap<usize, usize> =
            self.labels.iter().enumerate().map(|(v, &l)| (l, v)).collect();
        let local: Option<Vec<usize>> = labels.iter().map(|l| index.get(l).copied()).collect();
        match local {
            Some(local) => self.is_clique(&local),
            None => false,
        }
    }

    /// True when every vertex is adjacent to all others.
    pub fn is_complete(&self) -> bool {
        let n = self.num_vertices();
        self.adjacency.iter().all(|list| list.len() + 1 == n)
    }
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange {
            vertex: v,
            num_vertices: n,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub subproblems_solved: u64,
    pub reductions: u64,
}

/// A clique in terms of the labels of the graph it was computed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    pub vertices: Vec<usize>,
    pub size: usize,
    pub solver_name: String,
    pub stats: SolveStats,
}

impl CliqueResult {
    /// Sorts and deduplicates `vertices`; `size` follows.
    pub fn new(mut vertices: Vec<usize>, solver_name: impl Into<String>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        CliqueResult {
            size: vertices.len(),
            vertices,
            solver_name: solver_name.into(),
            stats: SolveStats::default(),
        }
    }

    /// Clique built from local vertex ids of `g`.
    pub fn from_local(g: &Graph, local: &[usize], solver_name: impl Into<String>) -> Self {
        Self::new(local.iter().map(|&v| g.label(v)).collect(), solver_name)
    }

    pub fn with_stats(mut self, stats: SolveStats) -> Self {
        self.stats = stats;
        self
    }

    /// Checks the size bookkeeping and pairwise adjacency in `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        self.size == self.vertices.len() && g.is_clique_by_labels(&self.vertices)
    }
}
