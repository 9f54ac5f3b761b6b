mod common;

use std::collections::BTreeSet;

use cliquesplit::graph::{
    complete, cycle, gnp_random, hamming_graph, parse_dimacs, path, wheel, write_dimacs,
};
use cliquesplit::solvers::exact_max_clique;
use cliquesplit::{Error, Graph};
use proptest::prelude::*;

use common::brute_force_omega;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = if n < 2 { 0 } else { n * (n - 1) / 2 };
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().collect()
}

proptest! {
    #[test]
    fn dimacs_round_trip(g in arb_graph(25)) {
        let back = parse_dimacs(&write_dimacs(&g)).unwrap();
        prop_assert_eq!(back.num_vertices(), g.num_vertices());
        prop_assert_eq!(edge_set(&back), edge_set(&g));
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(25)) {
        let c = g.complement();
        c.validate().unwrap();
        let n = g.num_vertices();
        prop_assert_eq!(c.num_edges() + g.num_edges(), n * n.saturating_sub(1) / 2);
        for (u, v) in c.edges() {
            prop_assert!(!g.has_edge(u, v));
        }
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn degree_sum_is_twice_the_edge_count(g in arb_graph(30)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.num_edges());
        g.validate().unwrap();
    }

    #[test]
    fn induced_subgraph_keeps_exactly_the_inner_edges(
        g in arb_graph(20),
        picks in proptest::collection::vec(any::<bool>(), 20),
    ) {
        let chosen: Vec<usize> = (0..g.num_vertices()).filter(|&v| picks[v]).collect();
        let sub = g.induced_subgraph(&chosen).unwrap();
        sub.validate().unwrap();
        prop_assert_eq!(sub.labels(), &chosen[..]);
        let mapped: BTreeSet<(usize, usize)> =
            sub.edges().map(|(a, b)| (sub.label(a), sub.label(b))).collect();
        let expected: BTreeSet<(usize, usize)> = g
            .edges()
            .filter(|&(a, b)| picks[a] && picks[b])
            .collect();
        prop_assert_eq!(mapped, expected);
    }

    #[test]
    fn gnp_is_reproducible(n in 0usize..60, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let a = gnp_random(n, p, seed).unwrap();
        prop_assert_eq!(&a, &gnp_random(n, p, seed).unwrap());
        a.validate().unwrap();
    }

    #[test]
    fn removals_keep_the_graph_valid(g in arb_graph(20), v in 0usize..20) {
        prop_assume!(v < g.num_vertices());
        let h = g.remove_vertex(v).unwrap();
        h.validate().unwrap();
        prop_assert_eq!(h.num_edges(), g.num_edges() - g.degree(v));
        prop_assert!(!h.labels().contains(&v));
    }
}

#[test]
fn dimacs_examples() {
    let k3 = parse_dimacs("p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
    assert_eq!(k3, complete(3));
    let two = parse_dimacs("c isolated\np edge 2 0\n").unwrap();
    assert_eq!((two.num_vertices(), two.num_edges()), (2, 0));
    assert!(write_dimacs(&Graph::new(5)).contains("p edge 5 0"));
    let text = write_dimacs(&complete(3));
    assert!(text.contains("p edge 3 3"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 3);
    let dup = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
    assert_eq!(dup.num_edges(), 1);
}

#[test]
fn dimacs_errors_name_the_line() {
    let cases = [
        ("e 1 2\np edge 2 1\n", 1),
        ("p edge 2 1\np edge 2 1\n", 2),
        ("c ok\np edge 2 1\ne 1 3\n", 3),
        ("p edge 2 1\ne 0 1\n", 2),
        ("p edge 2 1\ne 2 2\n", 2),
        ("p edge x 1\n", 1),
    ];
    for (text, line) in cases {
        match parse_dimacs(text) {
            Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(matches!(parse_dimacs("c nothing\n"), Err(Error::Parse { .. })));
}

#[test]
fn complement_examples() {
    assert_eq!(complete(3).complement().num_edges(), 0);
    // The 4-cycle 0-1-2-3 has non-edges {0,2} and {1,3} among its 6 pairs.
    let c = cycle(4).complement();
    assert_eq!(edge_set(&c), BTreeSet::from([(0, 2), (1, 3)]));
}

#[test]
fn induced_subgraph_examples() {
    assert_eq!(complete(5).induced_subgraph(&[0, 2, 4]).unwrap().num_edges(), 3);
    let g = gnp_random(12, 0.5, 3).unwrap();
    assert_eq!(g.induced_subgraph(&(0..12).collect::<Vec<_>>()).unwrap(), g);
    // P4 a-b-c-d restricted to {a, c, d}: only c-d survives.
    let sub = path(4).induced_subgraph(&[0, 2, 3]).unwrap();
    assert_eq!(edge_set(&sub), BTreeSet::from([(1, 2)]));
    assert_eq!(sub.degree(0), 0);
    assert!(matches!(
        path(4).induced_subgraph(&[7]),
        Err(Error::VertexOutOfRange { vertex: 7, .. })
    ));
}

#[test]
fn common_neighbor_examples() {
    assert_eq!(complete(4).common_neighbors(0, 1).unwrap(), vec![2, 3]);
    let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert!(two_edges.common_neighbors(0, 2).unwrap().is_empty());
    // Wheel with hub 0 and rim 1-2-3-4: hub and rim vertex 1 share 2 and 4.
    assert_eq!(wheel(5).common_neighbors(0, 1).unwrap(), vec![2, 4]);
    assert!(complete(3).common_neighbors(0, 3).is_err());
}

#[test]
fn gnp_boundaries() {
    assert_eq!(gnp_random(10, 0.0, 1).unwrap().num_edges(), 0);
    assert_eq!(gnp_random(10, 1.0, 1).unwrap(), complete(10));
    assert!(gnp_random(10, 1.5, 1).is_err());
    assert!(gnp_random(10, -0.1, 1).is_err());
}

#[test]
fn gnp_edge_counts_are_binomial() {
    // Each of 990 pairs is an edge with probability 1/2: mean 495, sd ~15.7.
    let sd = (990.0f64 * 0.25).sqrt();
    let counts: Vec<f64> = (0..100)
        .map(|s| gnp_random(45, 0.5, s).unwrap().num_edges() as f64)
        .collect();
    for &c in &counts {
        assert!((c - 495.0).abs() <= 4.0 * sd, "{c}");
    }
    let mean = counts.iter().sum::<f64>() / 100.0;
    assert!((mean - 495.0).abs() <= 3.0 * sd / 10.0, "mean {mean}");
}

#[test]
fn hamming_examples() {
    assert_eq!(hamming_graph(2, 1).unwrap(), complete(4));
    let h33 = hamming_graph(3, 3).unwrap();
    assert_eq!(h33.num_edges(), 4);
    assert!(h33.edges().all(|(u, v)| u ^ v == 0b111));
    assert_eq!(brute_force_omega(&h33), 2);
    let h42 = hamming_graph(4, 2).unwrap();
    assert_eq!(h42.num_vertices(), 16);
    assert_eq!(brute_force_omega(&h42), 8);
    assert_eq!(exact_max_clique(&h42, None).unwrap().size, 8);
    assert!(hamming_graph(21, 1).is_err());
}
