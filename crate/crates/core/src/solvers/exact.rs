//! Exact maximum clique by branch and bound.
//!
//! Vertices are renumbered in reverse degeneracy order and kept in bitsets.
//! Each node greedily colors the candidate set; a clique can take at most
//! one vertex per color class, so `|current| + colors` bounds the branch.

use crate::graph::{CliqueResult, Graph};
use crate::{Error, Result};

pub const EXACT_NAME: &str = "exact";

#[derive(Clone)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn new(n: usize) -> Self {
        Bitset(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::new(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn intersect_into(&self, other: &Bitset, out: &mut Bitset) {
        for ((o, a), b) in out.0.iter_mut().zip(&self.0).zip(&other.0) {
            *o = a & b;
        }
    }

    fn difference_assign(&mut self, other: &Bitset) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
}

/// Vertex order with the highest-core vertices first.
pub(crate) fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut degree = g.degrees();
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_degree + 1];
    for v in (0..n).rev() {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    while order.len() < n {
        d = d.min(max_degree);
        while buckets[d].is_empty() {
            d += 1;
        }
        let v = buckets[d].pop().expect("non-empty bucket");
        // Stale entry: the vertex moved to a lower bucket or is gone.
        if removed[v] || degree[v] != d {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                degree[u] -= 1;
                buckets[degree[u]].push(u);
                d = d.min(degree[u]);
            }
        }
    }
    order.reverse();
    order
}

struct Search<'a> {
    adjacency: Vec<Bitset>,
    original: &'a [usize],
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    node_limit: u64,
    words: usize,
}

impl Search<'_> {
    /// Greedy sequential coloring of `candidates` in index order. Returns the
    /// vertices grouped by color class with the class number of each.
    fn color(&self, candidates: &Bitset) -> Vec<(usize, usize)> {
        let mut uncolored = candidates.clone();
        let mut out = Vec::new();
        let mut class = 0;
        let mut q = Bitset(vec![0; self.words]);
        while !uncolored.is_empty() {
            class += 1;
            q.0.copy_from_slice(&uncolored.0);
            while let Some(v) = q.first() {
                q.remove(v);
                uncolored.remove(v);
                q.difference_assign(&self.adjacency[v]);
                out.push((v, class));
            }
        }
        out
    }

    fn expand(&mut self, mut candidates: Bitset) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::BudgetExhausted {
                nodes: self.nodes - 1,
                best: self.best.iter().map(|&v| self.original[v]).collect(),
            });
        }
        let colored = self.color(&candidates);
        let mut next = Bitset(vec![0; self.words]);
        for &(v, class) in colored.iter().rev() {
            if self.current.len() + class <= self.best.len() {
                return Ok(());
            }
            self.current.push(v);
            candidates.intersect_into(&self.adjacency[v], &mut next);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next.clone())?;
            }
            self.current.pop();
            candidates.remove(v);
        }
        Ok(())
    }
}

/// Maximum clique of `g`, deterministic. `node_limit` caps the number of
/// search nodes; running out returns [`Error::BudgetExhausted`] with the
/// best clique found so far (as labels).
pub fn exact_max_clique(g: &Graph, node_limit: Option<u64>) -> Result<CliqueResult> {
    let n = g.num_vertices();
    if n == 0 {
        return Ok(CliqueResult::new(Vec::new(), EXACT_NAME));
    }
    let order = degeneracy_order(g);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let adjacency = order
        .iter()
        .map(|&v| {
            let mut b = Bitset::new(n);
            for &u in g.neighbors(v) {
                b.insert(position[u]);
            }
            b
        })
        .collect();
    let labels: Vec<usize> = order.iter().map(|&v| g.label(v)).collect();
    let mut search = Search {
        adjacency,
        original: &labels,
        current: Vec::new(),
        best: vec![0],
        nodes: 0,
        node_limit: node_limit.unwrap_or(u64::MAX),
        words: n.div_ceil(64),
    };
    search.expand(Bitset::full(n))?;
    let clique = search.best.iter().map(|&v| labels[v]).collect();
    Ok(CliqueResult::new(clique, EXACT_NAME))
}
