//! Searching over the clique size and over the vertex limit.

use std::collections::BTreeMap;

use super::{split_solve, SplitConfig, SubproblemSolver};
use crate::graph::Graph;
use crate::{Error, Result};

/// Records predicate answers and rejects any `true` above a `false`.
struct Oracle<F> {
    predicate: F,
    seen: BTreeMap<usize, bool>,
}

impl<F: FnMut(usize) -> Result<bool>> Oracle<F> {
    fn ask(&mut self, size: usize) -> Result<bool> {
        if let Some(&answer) = self.seen.get(&size) {
            return Ok(answer);
        }
        let answer = (self.predicate)(size)?;
        self.seen.insert(size, answer);
        let lowest_false = self.seen.iter().find(|(_, &a)| !a).map(|(&k, _)| k);
        let highest_true = self.seen.iter().rev().find(|(_, &a)| a).map(|(&k, _)| k);
        if let (Some(false_at), Some(true_at)) = (lowest_false, highest_true) {
            if true_at > false_at {
                return Err(Error::NonMonotone { true_at, false_at });
            }
        }
        Ok(answer)
    }
}

/// Largest `k` with `has_clique_of_size(k)`, assuming the predicate holds
/// exactly for `k ≤ ω(g)`. Sizes double until the first failure, then the
/// bracket is bisected; one extra probe two above the answer checks
/// monotonicity. Size 1 is never asked (any vertex is a clique).
pub fn binary_search_max_clique<F>(g: &Graph, has_clique_of_size: F) -> Result<usize>
where
    F: FnMut(usize) -> Result<bool>,
{
    let n = g.num_vertices();
    if n == 0 {
        return Ok(0);
    }
    let mut oracle = Oracle {
        predicate: has_clique_of_size,
        seen: BTreeMap::new(),
    };
    let mut lo = 1;
    let mut hi = n + 1;
    let mut size = 2;
    while size <= n {
        if oracle.ask(size)? {
            lo = size;
            size *= 2;
        } else {
            hi = size;
            break;
        }
    }
    if hi == n + 1 && lo < n {
        // Doubling overshot n without a failure.
        if oracle.ask(n)? {
            return Ok(n);
        }
        hi = n;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if oracle.ask(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo + 2 <= n {
        oracle.ask(lo + 2)?;
    }
    Ok(lo)
}

/// Solver calls of [`split_solve`] on `g` for each vertex limit, all runs
/// with the same seed. `limits` must be ascending.
pub fn sweep_vertex_limit<S: SubproblemSolver + ?Sized>(
    g: &Graph,
    limits: &[usize],
    seed: u64,
    solver: &S,
) -> Result<Vec<(usize, u64)>> {
    if limits.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("vertex limits must be ascending".into()));
    }
    limits
        .iter()
        .map(|&limit| {
            let r = split_solve(g, &SplitConfig::new(limit, seed), solver)?;
            Ok((limit, r.stats.subproblems_solved))
        })
        .collect()
}
