//! A subproblem graph that loses vertices and edges in place.
//!
//! Vertex splitting on a large, sparse subproblem removes one vertex per
//! step. Copying the graph for every step costs `O(|E|)` each time; this
//! structure makes a step cost proportional to the degrees involved.
//! Vertices keep the indices of the graph it was built from, and live
//! vertices stay in index order, so "smallest id" and "i-th vertex" mean the
//! same thing as on the equivalent materialized [`Graph`].

use std::collections::BTreeSet;

use rand::{Rng, RngCore};

use crate::graph::Graph;
use crate::reduce::ReduceOptions;

/// Prefix counts over live vertices.
struct Fenwick {
    tree: Vec<usize>,
}

impl Fenwick {
    fn full(n: usize) -> Self {
        let mut tree = vec![0; n + 1];
        for i in 1..=n {
            tree[i] += 1;
            let parent = i + (i & i.wrapping_neg());
            if parent <= n {
                tree[parent] += tree[i];
            }
        }
        Fenwick { tree }
    }

    fn remove(&mut self, index: usize) {
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Index of the live vertex of rank `k` (0-based).
    fn nth(&self, mut k: usize) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = n.checked_next_power_of_two().unwrap_or(0).max(1);
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= k {
                pos = next;
                k -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

pub(crate) struct Shrinking {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<usize>,
    alive: Vec<bool>,
    live: Fenwick,
    num_alive: usize,
    num_edges: usize,
    /// Live vertices by current degree.
    buckets: Vec<BTreeSet<usize>>,
    /// No live vertex has a larger degree.
    top: usize,
    /// Scratch map from index to position, `usize::MAX` when unset.
    remap: Vec<usize>,
}

impl Shrinking {
    pub fn new(g: Graph) -> Self {
        let n = g.num_vertices();
        let num_edges = g.num_edges();
        let labels = g.labels().to_vec();
        let adjacency = g.into_adjacency();
        let top = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        let mut buckets = vec![BTreeSet::new(); top + 1];
        for (v, list) in adjacency.iter().enumerate() {
            buckets[list.len()].insert(v);
        }
        Shrinking {
            adjacency,
            labels,
            alive: vec![true; n],
            live: Fenwick::full(n),
            num_alive: n,
            num_edges,
            buckets,
            top,
            remap: vec![usize::MAX; n],
        }
    }

    pub fn len(&self) -> usize {
        self.num_alive
    }

    pub fn is_empty(&self) -> bool {
        self.num_alive == 0
    }

    pub fn is_complete(&self) -> bool {
        let n = self.num_alive;
        self.num_edges == n * n.saturating_sub(1) / 2
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn live_labels(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v]).map(|v| self.labels[v])
    }

    fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Same rule as [`super::choose_vertex`]: maximum, lower-median or
    /// minimum degree by attempt, smallest index on ties.
    pub fn choose_vertex(&mut self, attempt: usize) -> usize {
        assert!(!self.is_empty(), "choose_vertex on an empty graph");
        let degree = match attempt {
            0 => {
                while self.buckets[self.top].is_empty() {
                    self.top -= 1;
                }
                self.top
            }
            1 => {
                let rank = (self.num_alive - 1) / 2;
                let mut seen = 0;
                (0..=self.top)
                    .find(|&d| {
                        seen += self.buckets[d].len();
                        seen > rank
                    })
                    .expect("rank is below the live count")
            }
            _ => (0..=self.top)
                .find(|&d| !self.buckets[d].is_empty())
                .expect("a live vertex exists"),
        };
        *self.buckets[degree].first().expect("bucket is non-empty")
    }

    /// Subgraph induced by the live neighbors of `v`, labels carried over.
    pub fn neighborhood(&mut self, v: usize) -> Graph {
        let members = self.adjacency[v].clone();
        for (i, &u) in members.iter().enumerate() {
            self.remap[u] = i;
        }
        let adjacency = members
            .iter()
            .map(|&u| {
                self.adjacency[u]
                    .iter()
                    .filter_map(|&w| match self.remap[w] {
                        usize::MAX => None,
                        i => Some(i),
                    })
                    .collect()
            })
            .collect();
        for &u in &members {
            self.remap[u] = usize::MAX;
        }
        let labels = members.iter().map(|&u| self.labels[u]).collect();
        Graph::from_sorted_adjacency(adjacency, labels)
    }

    /// The live part as an ordinary graph.
    pub fn materialize(&mut self) -> Graph {
        let members: Vec<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        for (i, &u) in members.iter().enumerate() {
            self.remap[u] = i;
        }
        let adjacency = members
            .iter()
            .map(|&u| self.adjacency[u].iter().map(|&w| self.remap[w]).collect())
            .collect();
        for &u in &members {
            self.remap[u] = usize::MAX;
        }
        let labels = members.iter().map(|&u| self.labels[u]).collect();
        Graph::from_sorted_adjacency(adjacency, labels)
    }

    fn move_bucket(&mut self, v: usize, from: usize) {
        let to = self.degree(v);
        self.buckets[from].remove(&v);
        self.buckets[to].insert(v);
    }

    fn unlink(&mut self, u: usize, v: usize) {
        let list = &mut self.adjacency[u];
        let at = list.binary_search(&v).expect("edge is present");
        list.remove(at);
        let from = list.len() + 1;
        self.move_bucket(u, from);
    }

    pub fn remove_vertex(&mut self, v: usize) {
        debug_assert!(self.alive[v]);
        let neighbors = std::mem::take(&mut self.adjacency[v]);
        for &u in &neighbors {
            self.unlink(u, v);
        }
        self.num_edges -= neighbors.len();
        self.buckets[neighbors.len()].remove(&v);
        self.alive[v] = false;
        self.live.remove(v);
        self.num_alive -= 1;
    }

    fn remove_edge(&mut self, u: usize, v: usize) {
        self.unlink(u, v);
        self.unlink(v, u);
        self.num_edges -= 1;
    }

    /// Deletes vertices of degree below `k` until none is left.
    fn peel(&mut self, k: usize) {
        let limit = k.min(self.buckets.len());
        while let Some(d) = (0..limit).find(|&d| !self.buckets[d].is_empty()) {
            let v = *self.buckets[d].first().expect("bucket is non-empty");
            self.remove_vertex(v);
        }
    }

    fn count_common(&self, u: usize, v: usize) -> usize {
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

    /// In-place [`crate::reduce::reduce_graph_with`], drawing the same
    /// random numbers and removing the same vertices and edges.
    pub fn reduce<R: RngCore>(&mut self, lower_bound: usize, rng: &mut R, options: ReduceOptions) {
        self.peel(lower_bound);
        if self.is_empty() {
            return;
        }
        if lower_bound <= 2 {
            let _ = rng.random_range(0..self.num_alive as u64);
            return;
        }
        let threshold = lower_bound - 2;
        let mut doomed = Vec::new();
        let mut scan = |this: &Self, v: usize| {
            for &w in &this.adjacency[v] {
                if this.count_common(v, w) < threshold {
                    doomed.push((v.min(w), v.max(w)));
                }
            }
        };
        if options.exhaustive {
            for v in (0..self.alive.len()).filter(|&v| self.alive[v]) {
                scan(self, v);
            }
            doomed.sort_unstable();
            doomed.dedup();
        } else {
            let rank = rng.random_range(0..self.num_alive as u64) as usize;
            scan(self, self.live.nth(rank));
        }
        if !doomed.is_empty() {
            for (u, v) in doomed {
                self.remove_edge(u, v);
            }
            self.peel(lower_bound);
        }
    }
}
