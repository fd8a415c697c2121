mod common;

use proptest::prelude::*;

use common::{arb_graph, arb_graph_with_set};
use ktcolor::graph::{Bipartition, Graph};
use ktcolor::progress::is_proper;

/// Bipartiteness by parity union-find over the edge list.
fn bipartite_by_parity(g: &Graph) -> bool {
    fn find(parent: &mut [(usize, bool)], v: usize) -> (usize, bool) {
        let (p, par) = parent[v];
        if p == v {
            return (v, false);
        }
        let (root, up) = find(parent, p);
        parent[v] = (root, par ^ up);
        (root, par ^ up)
    }
    let mut parent: Vec<(usize, bool)> = (0..g.n()).map(|v| (v, false)).collect();
    for (u, v) in g.edges() {
        let (ru, pu) = find(&mut parent, u);
        let (rv, pv) = find(&mut parent, v);
        if ru == rv {
            if pu == pv {
                return false;
            }
        } else {
            parent[ru] = (rv, !(pu ^ pv));
        }
    }
    true
}

proptest! {
    #[test]
    fn neighborhood_is_union_of_neighbors((g, x) in arb_graph_with_set(30, 0.2)) {
        let mut naive = g.set_of([]);
        for v in x.iter() {
            naive.union_with(&g.neighbors(v).unwrap());
        }
        prop_assert_eq!(g.neighborhood(&x), naive);
    }

    #[test]
    fn two_coloring_iff_bipartite(g in arb_graph(50, 0.06)) {
        match g.two_color_or_odd_cycle() {
            Bipartition::TwoColoring { side_a, side_b } => {
                prop_assert!(bipartite_by_parity(&g));
                prop_assert!(side_a.is_disjoint(&side_b));
                prop_assert_eq!(side_a.len() + side_b.len(), g.n());
                prop_assert!(g.is_independent(&side_a) && g.is_independent(&side_b));
            }
            Bipartition::OddCycle(cycle) => {
                prop_assert!(!bipartite_by_parity(&g));
                prop_assert!(g.is_odd_cycle(&cycle));
            }
        }
    }

    #[test]
    fn contraction_lifts_colorings((g, x) in arb_graph_with_set(24, 0.15)) {
        // Shrink x to an independent set by dropping later endpoints.
        let mut x = x;
        while let Some((_, v)) = g.edge_inside(&x) {
            x.remove(v);
        }
        prop_assume!(!x.is_empty());
        let c = g.contract(&x).unwrap();
        let small = ktcolor::lab::bench::greedy_coloring(&c.graph);
        prop_assert!(is_proper(&c.graph, &small));
        let lifted: Vec<u32> = (0..g.n()).map(|v| small[c.old_to_new[v]]).collect();
        prop_assert!(is_proper(&g, &lifted));
        let first = lifted[x.first().unwrap()];
        prop_assert!(x.iter().all(|v| lifted[v] == first));
        prop_assert_eq!(c.graph.n(), g.n() - x.len() + 1);
    }

    #[test]
    fn contraction_rejects_dependent_sets((g, x) in arb_graph_with_set(20, 0.3)) {
        prop_assert_eq!(g.contract(&x).is_err(), x.is_empty() || g.edge_inside(&x).is_some());
    }

    #[test]
    fn induced_edge_count((g, x) in arb_graph_with_set(30, 0.2)) {
        let sub = g.induced(&x).unwrap();
        let inside = g.edges().filter(|&(u, v)| x.contains(u) && x.contains(v)).count();
        prop_assert_eq!(sub.graph.m(), inside);
        for (a, b) in sub.graph.edges() {
            prop_assert!(g.has_edge(sub.to_parent[a], sub.to_parent[b]));
        }
    }

    #[test]
    fn iteration_is_ascending((_, x) in arb_graph_with_set(40, 0.1)) {
        let v = x.to_vec();
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
