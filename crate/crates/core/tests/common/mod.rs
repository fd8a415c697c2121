#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;

use ktcolor::graph::{Graph, VertexSet};
use ktcolor::lab::gen;

/// A simple graph on `1..=max_n` vertices with each pair present with
/// probability about `density`.
pub fn arb_graph(max_n: usize, density: f64) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(move |(n, seed)| random_graph(n, density, seed))
}

pub fn arb_graph_with_set(max_n: usize, density: f64) -> impl Strategy<Value = (Graph, VertexSet)> {
    arb_graph(max_n, density).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(any::<bool>(), n))
            .prop_map(|(g, bits)| {
                let set = g.set_of(bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
                (g, set)
            })
    })
}

pub fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = gen::rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random subset drawn from a seed, each vertex kept with probability `p`.
pub fn random_subset(g: &Graph, p: f64, seed: u64) -> VertexSet {
    let mut rng = gen::rng(seed);
    g.set_of((0..g.n()).filter(|_| rng.gen_bool(p)))
}

/// `(root, N(root), N(N(root)) ∖ (N(root) ∪ {root}))` for every vertex with
/// a non-empty second neighborhood.
pub fn second_neighborhoods(g: &Graph) -> Vec<(usize, VertexSet, VertexSet)> {
    let mut out = Vec::new();
    for r in 0..g.n() {
        let s = g.neighbors(r).unwrap();
        let mut t = g.neighborhood(&s);
        t.difference_with(&s);
        t.remove(r);
        if !s.is_empty() && !t.is_empty() {
            out.push((r, s, t));
        }
    }
    out
}
