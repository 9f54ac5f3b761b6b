use std::collections::{BTreeSet, VecDeque};

use cliquesplit::chimera::{
    apply_defects, chimera_graph, clique_capacity, contract_random_edges, ChimeraSpec,
};
use cliquesplit::graph::cycle;
use cliquesplit::solvers::exact_max_clique;
use cliquesplit::Graph;
use proptest::prelude::*;

fn spec(m: usize, n: usize, l: usize) -> ChimeraSpec {
    ChimeraSpec::new(m, n, l).unwrap()
}

/// BFS 2-coloring; `None` if an odd cycle exists.
fn two_color(g: &Graph) -> Option<Vec<u8>> {
    let n = g.num_vertices();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if color[u] == u8::MAX {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if color[u] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

#[test]
fn counts_and_coloring_for_every_small_spec() {
    for m in 1..=12 {
        for n in 1..=12 {
            for l in 1..=4 {
                let s = spec(m, n, l);
                let g = chimera_graph(s).unwrap();
                assert_eq!(g.num_vertices(), 2 * l * m * n);
                assert_eq!(g.num_edges(), l * l * m * n + l * (m - 1) * n + l * m * (n - 1));
                g.validate().unwrap();
                for (u, v) in g.edges() {
                    assert_ne!(s.color(u), s.color(v), "C({m},{n},{l}) edge {u}-{v}");
                }
            }
        }
    }
}

#[test]
fn bipartite_by_search() {
    for (m, n, l) in [(1, 1, 4), (3, 5, 2), (12, 12, 4)] {
        assert!(two_color(&chimera_graph(spec(m, n, l)).unwrap()).is_some());
    }
    assert!(two_color(&cycle(5)).is_none());
}

#[test]
fn figure_one_sizes() {
    let g = chimera_graph(ChimeraSpec::dw2x()).unwrap();
    assert_eq!((g.num_vertices(), g.num_edges()), (1152, 3360));
    let dead: Vec<usize> = (0..57).map(|i| i * 20).collect();
    assert_eq!(apply_defects(&g, &dead, &[]).unwrap().num_vertices(), 1095);
    assert_eq!(apply_defects(&g, &[], &[]).unwrap(), g);
}

#[test]
fn removing_a_cell() {
    let s = spec(2, 2, 4);
    let g = chimera_graph(s).unwrap();
    let cell: Vec<usize> = (0..g.num_vertices())
        .filter(|&v| {
            let q = s.qubit(v);
            q.row == 1 && q.col == 0
        })
        .collect();
    assert_eq!(cell.len(), 8);
    let h = apply_defects(&g, &cell, &[]).unwrap();
    assert_eq!(h.num_vertices(), 24);
    // Three intact cells (16 each) and the two couplers between them.
    assert_eq!(h.num_edges(), 3 * 16 + 4 + 4);
    assert!(h.labels().iter().all(|v| !cell.contains(v)));
}

#[test]
fn contraction_sizes() {
    let g = chimera_graph(ChimeraSpec::dw2x()).unwrap();
    for m in [0, 1, 152, 500] {
        let (h, record) = contract_random_edges(&g, m, 9).unwrap();
        assert_eq!(h.num_vertices(), 1152 - m);
        assert_eq!(record.steps.len(), m);
        h.validate().unwrap();
    }
    let (four, _) = contract_random_edges(&cycle(4), 1, 0).unwrap();
    assert_eq!(four.num_edges(), 3);
}

/// Replays a contraction record on the input graph with set arithmetic.
fn replay(g: &Graph, steps: &[cliquesplit::chimera::Contraction]) -> BTreeSet<(usize, usize)> {
    let mut edges: BTreeSet<(usize, usize)> = g.edges().collect();
    for step in steps {
        assert!(edges.contains(&(step.v1, step.v2)), "contracted edge must exist");
        assert_eq!(step.merged, step.v1.min(step.v2));
        let moved: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| a == step.v2 || b == step.v2)
            .collect();
        for (a, b) in moved {
            edges.remove(&(a, b));
            let other = if a == step.v2 { b } else { a };
            if other != step.merged {
                edges.insert((other.min(step.merged), other.max(step.merged)));
            }
        }
    }
    edges
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contraction_matches_replay(m in 1usize..4, n in 1usize..4, l in 1usize..4, k in 0usize..12, seed in any::<u64>()) {
        let g = chimera_graph(spec(m, n, l)).unwrap();
        let k = k.min(g.num_vertices() - 1);
        let (h, record) = contract_random_edges(&g, k, seed).unwrap();
        h.validate().unwrap();
        prop_assert_eq!(h.num_vertices(), g.num_vertices() - k);
        let got: BTreeSet<(usize, usize)> =
            h.edges().map(|(a, b)| (h.label(a), h.label(b))).collect();
        prop_assert_eq!(got, replay(&g, &record.steps));
        prop_assert_eq!(&(h.clone(), record.clone()), &contract_random_edges(&g, k, seed).unwrap());
    }

    #[test]
    fn untouched_side_stays_independent(k in 0usize..6, seed in any::<u64>()) {
        let s = spec(2, 2, 2);
        let g = chimera_graph(s).unwrap();
        let (h, record) = contract_random_edges(&g, k, seed).unwrap();
        let touched: BTreeSet<usize> = record.steps.iter().flat_map(|c| [c.v1, c.v2]).collect();
        let bound = (0..2)
            .map(|c| (0..g.num_vertices()).filter(|&v| s.color(v) == c && !touched.contains(&v)).count())
            .max()
            .unwrap();
        let omega = exact_max_clique(&h.complement(), None).unwrap().size;
        prop_assert!(omega >= bound, "omega {} < bound {}", omega, bound);
    }
}

#[test]
fn cell_complement_is_two_cliques() {
    for l in 1..=4 {
        let c = chimera_graph(spec(1, 1, l)).unwrap().complement();
        assert_eq!(c.num_edges(), 2 * (l * (l - 1) / 2));
        assert_eq!(exact_max_clique(&c, None).unwrap().size, l);
        let side: Vec<usize> = (0..l).collect();
        assert!(c.is_clique(&side));
    }
}

#[test]
fn contraction_guards() {
    let g = chimera_graph(spec(1, 1, 1)).unwrap();
    assert!(contract_random_edges(&g, 2, 0).is_err());
    assert!(contract_random_edges(&Graph::new(3), 1, 0).is_err());
}

#[test]
fn capacity_values() {
    assert_eq!(clique_capacity(1152), 49);
    assert_eq!(clique_capacity(8), 5);
    assert_eq!(clique_capacity(2304), 65);
    assert_eq!(
        [1152, 2304, 4608, 9216].map(clique_capacity),
        [49, 65, 97, 133]
    );
}
