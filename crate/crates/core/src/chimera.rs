//! Chimera annealer topologies and derived benchmark graphs.
//!
//! `C(m, n, l)` is an `m x n` grid of `K_{l,l}` cells. Each cell holds `l`
//! vertical and `l` horizontal qubits; vertical qubits couple to the same
//! shore position in the cell below, horizontal ones to the cell on the
//! right. Qubit `(row, col, orientation, k)` has index
//! `((row * cols + col) * 2 + orientation) * l + k`.

use std::collections::BTreeSet;

use rand::Rng;

use crate::graph::Graph;
use crate::{rng_from_seed, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChimeraSpec {
    pub rows: usize,
    pub cols: usize,
    pub shore: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Vertical = 0,
    Horizontal = 1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Qubit {
    pub row: usize,
    pub col: usize,
    pub orientation: Orientation,
    pub k: usize,
}

impl ChimeraSpec {
    pub fn new(rows: usize, cols: usize, shore: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || shore == 0 {
            return Err(Error::InvalidArgument(
                "Chimera dimensions must be at least 1".into(),
            ));
        }
        let spec = ChimeraSpec { rows, cols, shore };
        spec.checked_num_vertices()?;
        Ok(spec)
    }

    /// The annealer topology used for the reference experiments: `C(12,12,4)`.
    pub fn dw2x() -> Self {
        ChimeraSpec {
            rows: 12,
            cols: 12,
            shore: 4,
        }
    }

    fn checked_num_vertices(&self) -> Result<usize> {
        2usize
            .checked_mul(self.shore)
            .and_then(|x| x.checked_mul(self.rows))
            .and_then(|x| x.checked_mul(self.cols))
            .filter(|&n| n <= u32::MAX as usize)
            .ok_or_else(|| Error::InvalidArgument("Chimera graph is too large".into()))
    }

    pub fn num_vertices(&self) -> usize {
        2 * self.shore * self.rows * self.cols
    }

    /// `l²mn + l(m-1)n + lm(n-1)`.
    pub fn num_edges(&self) -> usize {
        let (m, n, l) = (self.rows, self.cols, self.shore);
        l * l * m * n + l * (m - 1) * n + l * m * (n - 1)
    }

    pub fn index(&self, q: Qubit) -> usize {
        ((q.row * self.cols + q.col) * 2 + q.orientation as usize) * self.shore + q.k
    }

    pub fn qubit(&self, index: usize) -> Qubit {
        let k = index % self.shore;
        let rest = index / self.shore;
        let orientation = if rest.is_multiple_of(2) {
            Orientation::Vertical
        } else {
            Orientation::Horizontal
        };
        let cell = rest / 2;
        Qubit {
            row: cell / self.cols,
            col: cell % self.cols,
            orientation,
            k,
        }
    }

    /// Proper 2-coloring: vertical qubits of cell `(i, j)` get `(i + j) % 2`,
    /// horizontal ones the opposite color.
    pub fn color(&self, index: usize) -> usize {
        let q = self.qubit(index);
        (q.row + q.col + q.orientation as usize) % 2
    }
}

pub fn chimera_graph(spec: ChimeraSpec) -> Result<Graph> {
    let spec = ChimeraSpec::new(spec.rows, spec.cols, spec.shore)?;
    let mut edges = Vec::with_capacity(spec.num_edges());
    for row in 0..spec.rows {
        for col in 0..spec.cols {
            let at = |orientation, k| {
                spec.index(Qubit {
                    row,
                    col,
                    orientation,
                    k,
                })
            };
            for a in 0..spec.shore {
                for b in 0..spec.shore {
                    edges.push((at(Orientation::Vertical, a), at(Orientation::Horizontal, b)));
                }
                if row + 1 < spec.rows {
                    let below = spec.index(Qubit {
                        row: row + 1,
                        col,
                        orientation: Orientation::Vertical,
                        k: a,
                    });
                    edges.push((at(Orientation::Vertical, a), below));
                }
                if col + 1 < spec.cols {
                    let right = spec.index(Qubit {
                        row,
                        col: col + 1,
                        orientation: Orientation::Horizontal,
                        k: a,
                    });
                    edges.push((at(Orientation::Horizontal, a), right));
                }
            }
        }
    }
    Graph::from_edges(spec.num_vertices(), edges)
}

/// Removes broken qubits and couplers. The surviving vertices are
/// re-indexed in increasing order and keep their labels.
pub fn apply_defects(
    g: &Graph,
    dead_vertices: &[usize],
    dead_edges: &[(usize, usize)],
) -> Result<Graph> {
    let n = g.num_vertices();
    let mut dead = vec![false; n];
    for &v in dead_vertices {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                num_vertices: n,
            });
        }
        dead[v] = true;
    }
    let alive: Vec<usize> = (0..n).filter(|&v| !dead[v]).collect();
    if alive.is_empty() {
        return Err(Error::InvalidArgument("defects remove every vertex".into()));
    }
    let without_edges = g.remove_edges(dead_edges)?;
    Ok(without_edges.induced_sorted(&alive))
}

/// One contraction step: edge `(v1, v2)` of the graph at that time, merged
/// into `merged` (the smaller id). Ids refer to the input graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contraction {
    pub v1: usize,
    pub v2: usize,
    pub merged: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContractionRecord {
    pub steps: Vec<Contraction>,
}

/// Contracts `m` edges, each drawn uniformly from the current edge set.
/// The merged vertex is adjacent to `N(v1) ∪ N(v2) \ {v1, v2}`, so the
/// result stays simple and has `|V| - m` vertices.
pub fn contract_random_edges(g: &Graph, m: usize, seed: u64) -> Result<(Graph, ContractionRecord)> {
    let n = g.num_vertices();
    if m >= n && m > 0 {
        return Err(Error::InvalidArgument(format!(
            "cannot contract {m} edges in a graph with {n} vertices"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut adjacency: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut record = ContractionRecord::default();
    for step in 0..m {
        let edges: Vec<(usize, usize)> = (0..n)
            .filter(|&u| alive[u])
            .flat_map(|u| adjacency[u].range(u + 1..).map(move |&v| (u, v)))
            .collect();
        if edges.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "no edge left to contract at step {}",
                step + 1
            )));
        }
        let (v1, v2) = edges[rng.random_range(0..edges.len() as u64) as usize];
        // v1 < v2: keep v1 as the merged vertex.
        let absorbed = std::mem::take(&mut adjacency[v2]);
        alive[v2] = false;
        for &w in &absorbed {
            adjacency[w].remove(&v2);
            if w != v1 {
                adjacency[w].insert(v1);
                adjacency[v1].insert(w);
            }
        }
        record.steps.push(Contraction { v1, v2, merged: v1 });
    }
    let survivors: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut remap = vec![usize::MAX; n];
    for (new, &old) in survivors.iter().enumerate() {
        remap[old] = new;
    }
    let new_adjacency = survivors
        .iter()
        .map(|&old| adjacency[old].iter().map(|&u| remap[u]).collect())
        .collect();
    let labels = survivors.iter().map(|&old| g.label(old)).collect();
    Ok((Graph::from_sorted_adjacency(new_adjacency, labels), record))
}

/// Size of the largest complete graph embeddable in a square `C(m, m, 4)`
/// with `num_qubits = 8m²`: `1 + 4 * floor(sqrt(num_qubits / 8))`.
pub fn clique_capacity(num_qubits: u64) -> u64 {
    1 + 4 * (num_qubits / 8).isqrt()
}
