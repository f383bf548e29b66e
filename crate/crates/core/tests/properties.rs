mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use common::{compare, enumerators_for, run, Enumerator};
use misenum::bounded_degree::{is_fertile_global, is_fertile_local};
use misenum::dominance::{DominanceTester, MinorConfig, MinorDomStructure, SparseDomStructure};
use misenum::graph::{
    degeneracy_ordering, orient_by_ordering, parse_edge_list, Graph, InputFormat, VertexOrdering,
};
use misenum::oracle::{brute_mis, NaiveDominance};
use misenum::reverse_search::{compute_later, lfmis, parent};
use misenum::set::VertexSet;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e));
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn graph_with_order(max_n: usize) -> impl Strategy<Value = (Graph, VertexOrdering)> {
    graph(max_n).prop_flat_map(|g| {
        let order: Vec<usize> = g.vertices().collect();
        (Just(g), Just(order).prop_shuffle())
            .prop_map(|(g, order)| (g, VertexOrdering::from_order(order).unwrap()))
    })
}

fn updates(n: usize, len: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n, 0..len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumerators_match_brute_force_under_any_order((g, o) in graph_with_order(11)) {
        let expected = brute_mis(&g).unwrap();
        for which in enumerators_for(&g).into_iter().chain([Enumerator::MinorRecursive]) {
            prop_assert_eq!(compare(run(&g, &o, which).sets, &expected), Ok(()), "{:?}", which);
        }
    }

    #[test]
    fn every_non_root_set_has_a_maximal_parent((g, o) in graph_with_order(10)) {
        let root = lfmis(&g, &o);
        let n = g.vertex_count();
        let all: HashSet<Vec<usize>> = brute_mis(&g).unwrap().into_iter().collect();
        for s in &all {
            let s = VertexSet::from_slice(n, s);
            if s == root {
                continue;
            }
            let p = parent(&g, &o, &root, &s).unwrap();
            prop_assert!(all.contains(&p.to_vec()));
        }
    }

    #[test]
    fn fertility_tests_agree((g, o) in graph_with_order(9)) {
        let root = lfmis(&g, &o);
        let later = compute_later(&g, &o, &root).unwrap();
        for s in brute_mis(&g).unwrap() {
            let s = VertexSet::from_slice(g.vertex_count(), &s);
            for v in root.iter().filter(|&v| !s.contains(v)) {
                for n_set in later.independent_subsets(v) {
                    prop_assert_eq!(
                        is_fertile_local(&g, &o, &s, v, &n_set),
                        is_fertile_global(&g, &o, &s, v, &n_set)
                    );
                }
            }
        }
    }

    #[test]
    fn dominance_structures_track_naive(g in graph(30), ops in updates(30, 300), delta in 2usize..6) {
        let n = g.vertex_count();
        let (order, _) = degeneracy_ordering(&g);
        let mut naive = NaiveDominance::new(&g);
        let mut minor = MinorDomStructure::build(&g, MinorConfig::with_delta(delta));
        let mut sparse = SparseDomStructure::new(&g, &orient_by_ordering(&g, &order), Some(delta));
        for v in ops.into_iter().map(|v| v % n) {
            if naive.contains(v) {
                naive.delete(v).unwrap();
                minor.delete(v).unwrap();
                sparse.delete(v).unwrap();
            } else {
                naive.insert(v).unwrap();
                minor.insert(v).unwrap();
                sparse.insert(v).unwrap();
            }
            prop_assert_eq!(minor.undominated_count(), naive.undominated_count());
            prop_assert_eq!(sparse.undominated_count(), naive.undominated_count());
        }
        prop_assert_eq!(minor.check_invariants(), Ok(()));
        prop_assert_eq!(sparse.check_invariants(), Ok(()));
    }

    #[test]
    fn degeneracy_ordering_bounds_later_neighbors(g in graph(25)) {
        let (o, k) = degeneracy_ordering(&g);
        prop_assert!(o.max_later_degree(&g) <= k);
        prop_assert!(k <= g.max_degree());
    }

    #[test]
    fn edge_list_round_trip(g in graph(20)) {
        let mut text = format!("n {}\n", g.vertex_count());
        for (u, v) in g.edges() {
            text += &format!("{u} {v}\n{v} {u}\n");
        }
        prop_assert_eq!(parse_edge_list(text.as_bytes(), InputFormat::EdgeList).unwrap(), g);
    }
}
