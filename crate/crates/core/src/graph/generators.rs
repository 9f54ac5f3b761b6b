use rand::Rng;

use super::Graph;
use crate::{rng_from_seed, Error, Result};

pub fn empty(n: usize) -> Graph {
    Graph::new(n)
}

pub fn complete(n: usize) -> Graph {
    let adjacency = (0..n)
        .map(|v| (0..n).filter(|&u| u != v).collect())
        .collect();
    Graph::from_sorted_adjacency(adjacency, (0..n).collect())
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
}

/// Cycle on `n >= 3` vertices; smaller `n` gives a path.
pub fn cycle(n: usize) -> Graph {
    let closing = (n >= 3).then(|| (n - 1, 0));
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)).chain(closing)).expect("valid cycle")
}

/// Star on `n` vertices: hub 0 joined to `1..n`.
pub fn star(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (0, v))).expect("valid star")
}

/// Wheel on `n` vertices: hub 0 joined to a rim cycle on `1..n`.
pub fn wheel(n: usize) -> Graph {
    let rim = n.saturating_sub(1);
    let spokes = (1..n).map(|v| (0, v));
    let rim_edges = (0..rim).filter_map(move |i| {
        let (a, b) = (1 + i, 1 + (i + 1) % rim);
        (a != b).then_some((a, b))
    });
    Graph::from_edges(n, spokes.chain(rim_edges)).expect("valid wheel")
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid Petersen graph")
}

/// Erdős–Rényi `G(n, p)`: every pair is an edge independently with
/// probability `p`.
///
/// Uses geometric skipping over the pair sequence `(0,1), (0,2), (1,2),
/// (0,3), ...` so sparse graphs cost `O(n + m)`. The stream comes from
/// [`crate::Rng`] seeded with `seed`, so output is identical on every
/// platform.
pub fn gnp_random(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "edge probability {p} is outside [0, 1]"
        )));
    }
    if p == 0.0 {
        return Ok(Graph::new(n));
    }
    if p == 1.0 {
        return Ok(complete(n));
    }
    let mut rng = rng_from_seed(seed);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    // `v` is the larger endpoint, `w` the smaller; w = -1 before the start.
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w += 1 + skip.min(i64::MAX as f64 / 2.0) as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Graph::from_edges(n, edges)
}

pub const MAX_HAMMING_WORD_LENGTH: u32 = 20;

/// Vertices are all binary words of `word_length` bits; two words are
/// adjacent iff they differ in at least `min_distance` positions.
pub fn hamming_graph(word_length: u32, min_distance: u32) -> Result<Graph> {
    if word_length == 0 || min_distance == 0 {
        return Err(Error::InvalidArgument(
            "word length and distance must be at least 1".into(),
        ));
    }
    if word_length > MAX_HAMMING_WORD_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "word length {word_length} exceeds the limit of {MAX_HAMMING_WORD_LENGTH}"
        )));
    }
    let n = 1usize << word_length;
    let masks: Vec<usize> = (1..n)
        .filter(|m: &usize| m.count_ones() >= min_distance)
        .collect();
    let adjacency = (0..n)
        .map(|u| {
            let mut list: Vec<usize> = masks.iter().map(|m| u ^ m).collect();
            list.sort_unstable();
            list
        })
        .collect();
    Ok(Graph::from_sorted_adjacency(adjacency, (0..n).collect()))
}
