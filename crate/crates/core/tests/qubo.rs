mod common;

use cliquesplit::graph::{complete, gnp_random, path};
use cliquesplit::qubo::{
    assignment_to_clique, brute_force_min, mc_to_qubo, qubo_to_ising, spins_of, Decoded,
};
use cliquesplit::{BinaryAssignment, Error, Graph, PenaltyParams, Qubo};
use proptest::prelude::*;

use common::{brute_force_omega, random_graphs};

fn bits(s: &str) -> BinaryAssignment {
    s.parse().unwrap()
}

fn mc(g: &Graph) -> Qubo {
    mc_to_qubo(g, PenaltyParams::default())
}

#[test]
fn minimum_energy_is_minus_omega() {
    for (i, g) in random_graphs(200, 1..=14, &[0.1, 0.3, 0.5, 0.7, 0.9], 11).iter().enumerate() {
        let omega = brute_force_omega(g);
        let (x, energy) = brute_force_min(&mc(g)).unwrap();
        assert_eq!(energy, -(omega as f64), "graph {i}");
        match assignment_to_clique(g, &x).unwrap() {
            Decoded::Clique(c) => {
                assert_eq!(c.size, omega, "graph {i}");
                assert!(c.verify(g));
            }
            Decoded::Violations(v) => panic!("graph {i}: argmin violates {v:?}"),
        }
    }
}

#[test]
fn clearing_an_endpoint_always_helps() {
    // Any assignment with a violated pair loses energy when one endpoint
    // of that pair is cleared.
    for (i, g) in random_graphs(40, 2..=10, &[0.2, 0.5, 0.8], 3).iter().enumerate() {
        let q = mc(g);
        let n = g.num_vertices();
        for index in 0..1u64 << n {
            let x = BinaryAssignment::from_index(index, n);
            let Decoded::Violations(pairs) = assignment_to_clique(g, &x).unwrap() else {
                continue;
            };
            let energy = q.evaluate(&x).unwrap();
            let (u, _) = pairs[0];
            let mut cleared = x.into_bits();
            cleared[u] = false;
            let lower = q.evaluate(&BinaryAssignment::from_bits(cleared)).unwrap();
            assert!(lower < energy, "graph {i} index {index}");
        }
    }
}

#[test]
fn ising_energy_matches_on_every_assignment() {
    let graphs = random_graphs(30, 1..=12, &[0.3, 0.6], 8);
    for (i, g) in graphs.iter().enumerate() {
        let q = mc(g);
        let ising = qubo_to_ising(&q);
        let n = g.num_vertices();
        for index in 0..1u64 << n {
            let x = BinaryAssignment::from_index(index, n);
            let expected = q.evaluate(&x).unwrap();
            let got = ising.energy(&spins_of(&x)).unwrap();
            let terms = (q.linear().len() + q.quadratic().len() + 1) as f64;
            assert!((expected - got).abs() <= terms * f64::EPSILON * 4.0, "graph {i} index {index}");
        }
    }
}

fn arb_qubo() -> impl Strategy<Value = Qubo> {
    (1usize..10).prop_flat_map(|n| {
        let linear = proptest::collection::vec((0..n, -50i32..50), 0..n * 2);
        let quadratic = proptest::collection::vec((0..n, 0..n, -50i32..50), 0..n * n);
        (linear, quadratic).prop_map(move |(linear, quadratic)| {
            let mut q = Qubo::new(n);
            for (i, a) in linear {
                q.add_linear(i, a as f64 / 4.0).unwrap();
            }
            for (i, j, a) in quadratic {
                q.add_quadratic(i, j, a as f64 / 4.0).unwrap();
            }
            q
        })
    })
}

proptest! {
    #[test]
    fn text_round_trip(q in arb_qubo()) {
        prop_assert_eq!(Qubo::from_text(&q.to_text()).unwrap(), q);
    }

    #[test]
    fn stored_terms_are_canonical(q in arb_qubo()) {
        prop_assert!(q.quadratic().keys().all(|&(i, j)| i < j));
        prop_assert!(q.linear().values().chain(q.quadratic().values()).all(|&a| a != 0.0));
    }

    #[test]
    fn brute_force_is_a_true_minimum(q in arb_qubo()) {
        let (x, e) = brute_force_min(&q).unwrap();
        prop_assert_eq!(q.evaluate(&x).unwrap(), e);
        let n = q.num_variables();
        for index in 0..1u64 << n {
            prop_assert!(q.evaluate(&BinaryAssignment::from_index(index, n)).unwrap() >= e);
        }
    }
}

#[test]
fn formulation_examples() {
    let k3 = mc(&complete(3));
    assert!(k3.quadratic().is_empty());
    assert!(k3.linear().values().all(|&a| a == -1.0));
    assert_eq!(brute_force_min(&k3).unwrap(), (bits("111"), -3.0));

    let p3 = mc(&path(3));
    assert_eq!(p3.quadratic().iter().collect::<Vec<_>>(), vec![(&(0, 2), &2.0)]);
    assert_eq!(brute_force_min(&p3).unwrap(), (bits("110"), -2.0));
    assert_eq!(p3.evaluate(&bits("101")).unwrap(), 0.0);
    assert_eq!(p3.evaluate(&bits("000")).unwrap(), 0.0);

    assert_eq!(brute_force_min(&Qubo::new(3)).unwrap(), (bits("000"), 0.0));
    assert_eq!(brute_force_min(&mc(&Graph::new(5))).unwrap().1, -1.0);
}

#[test]
fn ising_examples() {
    let mut single = Qubo::new(1);
    single.add_linear(0, -1.0).unwrap();
    let ising = qubo_to_ising(&single);
    assert_eq!((ising.h.clone(), ising.offset), (vec![-0.5], -0.5));
    let zero = qubo_to_ising(&Qubo::new(4));
    assert!(zero.h.iter().all(|&h| h == 0.0) && zero.j.is_empty() && zero.offset == 0.0);
    let p3 = mc(&path(3));
    let ising = qubo_to_ising(&p3);
    for index in 0..8 {
        let x = BinaryAssignment::from_index(index, 3);
        assert_eq!(ising.energy(&spins_of(&x)).unwrap(), p3.evaluate(&x).unwrap());
    }
}

#[test]
fn decoding_examples() {
    match assignment_to_clique(&complete(3), &bits("111")).unwrap() {
        Decoded::Clique(c) => assert_eq!(c.vertices, vec![0, 1, 2]),
        other => panic!("{other:?}"),
    }
    assert_eq!(
        assignment_to_clique(&path(3), &bits("101")).unwrap(),
        Decoded::Violations(vec![(0, 2)])
    );
    let g = gnp_random(8, 0.0, 1).unwrap();
    for index in [0u64, 1, 2, 4, 128] {
        let x = BinaryAssignment::from_index(index, 8);
        assert!(matches!(assignment_to_clique(&g, &x).unwrap(), Decoded::Clique(c) if c.size <= 1));
    }
}

#[test]
fn guards() {
    assert!(PenaltyParams::new(2.0, 1.0).is_err());
    assert!(PenaltyParams::new(0.0, 1.0).is_err());
    assert!(PenaltyParams::new(1.0, 1.0).is_err());
    let q = mc(&complete(3));
    assert!(matches!(q.evaluate(&bits("11")), Err(Error::LengthMismatch { expected: 3, got: 2 })));
    assert!(assignment_to_clique(&complete(3), &bits("1")).is_err());
    assert!(brute_force_min(&Qubo::new(25)).is_err());
    assert!(Qubo::new(2).add_linear(2, 1.0).is_err());
    assert!(Qubo::from_text("L 0 1\n").is_err());
    assert!(Qubo::from_text("N 2\nQ 0 5 1\n").is_err());
}
