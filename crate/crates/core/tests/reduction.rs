mod common;

use std::collections::BTreeSet;

use common::{drop_edge_reduction, random_dag_edges, reachable};
use outrank::outranking::{build_digraph, promethee_i_relation, transitive_reduction, Dag};
use outrank::flows::FlowResult;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn matches_drop_edge_oracle() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let edges = random_dag_edges(&mut rng, n);
        let dag = Dag::from_edges(n, &edges).unwrap();
        let reduced: BTreeSet<_> = transitive_reduction(&dag).unwrap().edges().into_iter().collect();
        assert_eq!(reduced, drop_edge_reduction(n, &edges), "edges {edges:?}");
    }
}

#[test]
fn preserves_reachability_on_large_graphs() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..5 {
        let n = rng.gen_range(65..=150);
        let edges = random_dag_edges(&mut rng, n);
        let dag = Dag::from_edges(n, &edges).unwrap();
        let reduced = transitive_reduction(&dag).unwrap();
        let full: BTreeSet<_> = edges.iter().copied().collect();
        let cover: BTreeSet<_> = reduced.edges().into_iter().collect();
        assert!(cover.is_subset(&full));
        for _ in 0..200 {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            assert_eq!(reachable(n, &full, a, b), reachable(n, &cover, a, b));
        }
    }
}

#[test]
fn cycles_are_rejected() {
    let dag = Dag::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    assert!(transitive_reduction(&dag).is_err());
}

#[test]
fn outranking_digraph_is_acyclic() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..100 {
        let n = rng.gen_range(2..=20);
        // Coarse flow values force many ties and indifferences.
        let plus: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..5)) / 4.0).collect();
        let minus: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..5)) / 4.0).collect();
        let ids = (0..n).map(|i| format!("x{i}")).collect();
        let f = FlowResult::from_parts(ids, plus, minus).unwrap();
        let g = build_digraph(&promethee_i_relation(&f));
        assert!(g.topological_order().is_ok());
    }
}
