//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use cliquesplit::graph::gnp_random;
use cliquesplit::Graph;

/// ω(g) by checking all 2^n vertex subsets. Only for n ≤ 20.
pub fn brute_force_omega(g: &Graph) -> usize {
    let n = g.num_vertices();
    assert!(n <= 20, "brute force oracle is limited to 20 vertices");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let is_clique = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .all(|v| mask & !(1 << v) & !adj[v] == 0);
        if is_clique {
            best = size;
        }
    }
    best
}

/// ω(g) by Bron–Kerbosch with Tomita pivoting.
pub fn bron_kerbosch_omega(g: &Graph) -> usize {
    fn expand(g: &Graph, size: usize, p: Vec<usize>, mut x: Vec<usize>, best: &mut usize) {
        if p.is_empty() {
            if x.is_empty() {
                *best = (*best).max(size);
            }
            return;
        }
        if size + p.len() <= *best {
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| g.has_edge(u, w)).count())
            .unwrap();
        let branch: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
        let mut p = p;
        for v in branch {
            let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            expand(g, size + 1, np, nx, best);
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut best = 0;
    expand(g, 0, (0..g.num_vertices()).collect(), Vec::new(), &mut best);
    best
}

/// Deterministic stream of random graphs with sizes and densities spread
/// over the given ranges.
pub fn random_graphs(count: usize, sizes: std::ops::RangeInclusive<usize>, densities: &[f64], seed: u64) -> Vec<Graph> {
    let span = sizes.end() - sizes.start() + 1;
    (0..count)
        .map(|i| {
            let n = sizes.start() + (i * 7 + seed as usize) % span;
            let p = densities[i % densities.len()];
            gnp_random(n, p, seed.wrapping_mul(1_000_003).wrapping_add(i as u64)).unwrap()
        })
        .collect()
}

/// Ordinary least squares fit `y = a + b x`, returning (a, b, R²).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let b = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (my - b * mx, b, r2)
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}
