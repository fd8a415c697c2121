//! Immutable simple undirected graphs and dense vertex sets.
//!
//! Vertex ids are dense `0..n`. Adjacency is stored in compressed rows with
//! each row sorted ascending, so every iteration in this crate visits
//! vertices in ascending id order.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of vertex ids drawn from `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet { bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits }
    }

    /// Builds a set from ids. Panics if an id is outside the universe.
    pub fn from_iter_in<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Self {
        let mut set = VertexSet::new(universe);
        for v in ids {
            set.insert(v);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe(), "vertex {v} outside universe {}", self.universe());
        !self.bits.put(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let had = self.contains(v);
        if had {
            self.bits.set(v, false);
        }
        had
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Outcome of a bipartiteness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// The two color classes. Vertices outside the tested set are in neither.
    TwoColoring { side_a: VertexSet, side_b: VertexSet },
    /// A closed walk `c[0] - c[1] - ... - c[len-1] - c[0]` of odd length that
    /// visits distinct vertices.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::TwoColoring { .. })
    }
}

/// Result of [`Graph::induced`]: the subgraph and the id it had in the parent.
#[derive(Debug, Clone)]
pub struct Induced {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
}

/// Result of [`Graph::contract`].
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Graph,
    /// `old_to_new[v]` is the id of `v` in the contracted graph.
    pub old_to_new: Vec<usize>,
    /// Id of the merged vertex.
    pub merged: usize,
}

/// Counts of input defects dropped while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cleanup {
    pub self_loops: usize,
    pub duplicates: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { offsets: vec![0; n + 1], targets: Vec::new() }
    }

    /// Builds a simple graph, dropping self-loops and parallel edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges_reporting(n, edges).map(|(g, _)| g)
    }

    pub fn from_edges_reporting<I>(n: usize, edges: I) -> Result<(Graph, Cleanup)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        assert!(n <= u32::MAX as usize);
        let mut cleanup = Cleanup::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                cleanup.self_loops += 1;
                continue;
            }
            pairs.push((u as u32, v as u32));
            pairs.push((v as u32, u as u32));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        cleanup.duplicates = (before - pairs.len()) / 2;
        Ok((Self::from_sorted_arcs(n, &pairs), cleanup))
    }

    /// `arcs` must be sorted, deduplicated and symmetric.
    fn from_sorted_arcs(n: usize, arcs: &[(u32, u32)]) -> Graph {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = arcs.iter().map(|&(_, v)| v).collect();
        Graph { offsets, targets }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted adjacency row of `v`. Panics when `v` is out of range.
    #[inline]
    pub fn adj(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n()).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n()).map(|v| self.degree(v)).max()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.adj(u).iter().map(|&v| v as usize).filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    fn check_set(&self, x: &VertexSet) -> Result<()> {
        if x.universe() <= self.n() {
            return Ok(());
        }
        match x.iter().find(|&v| v >= self.n()) {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n() }),
            None => Ok(()),
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, ids: I) -> VertexSet {
        VertexSet::from_iter_in(self.n(), ids)
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        Ok(self.set_of(self.adj(v).iter().map(|&w| w as usize)))
    }

    /// Union of the neighborhoods of members of `x`; may intersect `x`.
    pub fn neighborhood(&self, x: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        for v in x.iter() {
            for &w in self.adj(v) {
                out.insert(w as usize);
            }
        }
        out
    }

    /// `N(x) ∩ within`.
    pub fn neighborhood_within(&self, x: &VertexSet, within: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        for v in x.iter() {
            for &w in self.adj(v) {
                if within.contains(w as usize) {
                    out.insert(w as usize);
                }
            }
        }
        out
    }

    pub fn neighbors_within(&self, v: usize, within: &VertexSet) -> VertexSet {
        self.set_of(self.adj(v).iter().map(|&w| w as usize).filter(|&w| within.contains(w)))
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<VertexSet> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::Input(format!("common neighbors of {u} with itself")));
        }
        Ok(self.set_of(sorted_intersection(self.adj(u), self.adj(v))))
    }

    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        sorted_intersection(self.adj(u), self.adj(v)).count()
    }

    /// `|N(v) ∩ x|`.
    pub fn degree_into(&self, v: usize, x: &VertexSet) -> usize {
        self.adj(v).iter().filter(|&&w| x.contains(w as usize)).count()
    }

    /// Number of edges with one end in `a` and the other in `b`, for disjoint sets.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|v| self.degree_into(v, b)).sum()
    }

    pub fn is_independent(&self, x: &VertexSet) -> bool {
        self.edge_inside(x).is_none()
    }

    /// Some edge with both ends in `x`, if any.
    pub fn edge_inside(&self, x: &VertexSet) -> Option<(usize, usize)> {
        x.iter().find_map(|v| {
            self.adj(v).iter().map(|&w| w as usize).find(|&w| w > v && x.contains(w)).map(|w| (v, w))
        })
    }

    pub fn induced(&self, x: &VertexSet) -> Result<Induced> {
        self.check_set(x)?;
        let to_parent: Vec<usize> = x.iter().collect();
        let mut to_child = vec![u32::MAX; self.n()];
        for (i, &v) in to_parent.iter().enumerate() {
            to_child[v] = i as u32;
        }
        let mut arcs = Vec::new();
        for (i, &v) in to_parent.iter().enumerate() {
            for &w in self.adj(v) {
                let j = to_child[w as usize];
                if j != u32::MAX {
                    arcs.push((i as u32, j));
                }
            }
        }
        // Rows are visited in ascending child id and parent rows are sorted,
        // and the child map is monotone, so `arcs` is already sorted.
        Ok(Induced { graph: Self::from_sorted_arcs(to_parent.len(), &arcs), to_parent })
    }

    /// Identifies the independent set `x` into a single vertex placed at the
    /// position of its smallest member.
    pub fn contract(&self, x: &VertexSet) -> Result<Contraction> {
        self.check_set(x)?;
        let anchor = x.first().ok_or_else(|| Error::Contract("empty set".into()))?;
        if let Some((u, v)) = self.edge_inside(x) {
            return Err(Error::Contract(format!("set is not independent: edge {u}-{v}")));
        }
        let mut old_to_new = vec![0usize; self.n()];
        let mut next = 0;
        for v in 0..self.n() {
            if x.contains(v) && v != anchor {
                continue;
            }
            old_to_new[v] = next;
            next += 1;
        }
        for v in x.iter() {
            old_to_new[v] = old_to_new[anchor];
        }
        let mut arcs = Vec::with_capacity(self.targets.len());
        for u in 0..self.n() {
            for &w in self.adj(u) {
                arcs.push((old_to_new[u] as u32, old_to_new[w as usize] as u32));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        Ok(Contraction { graph: Self::from_sorted_arcs(next, &arcs), merged: old_to_new[anchor], old_to_new })
    }

    /// Removes the vertices of `x`, returning the remaining graph and the
    /// parent id of each remaining vertex.
    pub fn without(&self, x: &VertexSet) -> Induced {
        let mut keep = self.vertex_set();
        keep.difference_with(x);
        self.induced(&keep).expect("complement is in range")
    }

    pub fn two_color_or_odd_cycle(&self) -> Bipartition {
        self.two_color_within(&self.vertex_set())
    }

    /// Bipartiteness of `G|within`, by BFS per component in ascending root order.
    pub fn two_color_within(&self, within: &VertexSet) -> Bipartition {
        let n = self.n();
        const UNSEEN: u8 = 2;
        let mut side = vec![UNSEEN; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut queue = std::collections::VecDeque::new();
        for root in within.iter() {
            if side[root] != UNSEEN {
                continue;
            }
            side[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &w in self.adj(u) {
                    let w = w as usize;
                    if !within.contains(w) {
                        continue;
                    }
                    if side[w] == UNSEEN {
                        side[w] = 1 - side[u];
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Bipartition::OddCycle(tree_cycle(u, w, &parent, &depth));
                    }
                }
            }
        }
        let mut side_a = VertexSet::new(n);
        let mut side_b = VertexSet::new(n);
        for v in within.iter() {
            if side[v] == 0 {
                side_a.insert(v);
            } else {
                side_b.insert(v);
            }
        }
        Bipartition::TwoColoring { side_a, side_b }
    }

    /// True when `cycle` is a closed walk of odd length over distinct vertices
    /// using only edges of this graph.
    pub fn is_odd_cycle(&self, cycle: &[usize]) -> bool {
        let len = cycle.len();
        if len < 3 || len % 2 == 0 {
            return false;
        }
        let mut seen = std::collections::HashSet::with_capacity(len);
        if !cycle.iter().all(|&v| v < self.n() && seen.insert(v)) {
            return false;
        }
        (0..len).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % len]))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n()).field("m", &self.m()).finish()
    }
}

fn sorted_intersection<'a>(a: &'a [u32], b: &'a [u32]) -> impl Iterator<Item = usize> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let v = a[i] as usize;
                    i += 1;
                    j += 1;
                    return Some(v);
                }
            }
        }
        None
    })
}

/// Cycle closed by the non-tree edge `u-w` whose ends share a BFS parity.
fn tree_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    // Both paths end at the common ancestor; keep it once.
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn neighbors_basic() {
        let tri = complete(3);
        assert_eq!(tri.neighbors(0).unwrap().to_vec(), vec![1, 2]);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.neighbors(2).unwrap().to_vec(), vec![1]);
        let iso = Graph::from_edges(2, []).unwrap();
        assert!(iso.neighbors(0).unwrap().is_empty());
        assert!(matches!(tri.neighbors(3), Err(Error::VertexOutOfRange { vertex: 3, n: 3 })));
    }

    #[test]
    fn neighborhood_of_sets() {
        let star = Graph::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        assert_eq!(star.neighborhood(&star.set_of([0])).to_vec(), vec![1, 2, 3, 4]);
        assert!(star.neighborhood(&VertexSet::new(5)).is_empty());
        let c5 = cycle(5);
        assert_eq!(c5.neighborhood(&c5.set_of([0, 2])).to_vec(), vec![1, 3, 4]);
    }

    #[test]
    fn common_neighbors_cases() {
        let k4 = complete(4);
        assert_eq!(k4.common_neighbors(0, 1).unwrap().to_vec(), vec![2, 3]);
        let matching = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matching.common_neighbors(0, 2).unwrap().is_empty());
        let k25 = Graph::from_edges(7, (2..7).flat_map(|w| [(0, w), (1, w)])).unwrap();
        assert_eq!(k25.common_neighbors(0, 1).unwrap().len(), 5);
        assert!(k4.common_neighbors(1, 1).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = complete(4);
        let sub = k4.induced(&k4.set_of([0, 2, 3])).unwrap();
        assert_eq!(sub.graph, complete(3));
        assert_eq!(sub.to_parent, vec![0, 2, 3]);
        let empty = k4.induced(&VertexSet::new(4)).unwrap();
        assert_eq!(empty.graph.n(), 0);
        let c6 = cycle(6);
        let evens = c6.induced(&c6.set_of([0, 2, 4])).unwrap();
        assert_eq!((evens.graph.n(), evens.graph.m()), (3, 0));
    }

    #[test]
    fn bipartition_and_cycles() {
        match complete(3).two_color_or_odd_cycle() {
            Bipartition::OddCycle(c) => {
                let mut sorted = c.clone();
                sorted.sort();
                assert_eq!(sorted, vec![0, 1, 2]);
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        match p3.two_color_or_odd_cycle() {
            Bipartition::TwoColoring { side_a, side_b } => {
                assert_eq!(side_a.to_vec(), vec![0, 2]);
                assert_eq!(side_b.to_vec(), vec![1]);
            }
            other => panic!("expected coloring, got {other:?}"),
        }
        let c5 = cycle(5);
        match c5.two_color_or_odd_cycle() {
            Bipartition::OddCycle(c) => {
                assert_eq!(c.len(), 5);
                assert!(c5.is_odd_cycle(&c));
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn contraction_cases() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let c = p3.contract(&p3.set_of([0, 2])).unwrap();
        assert_eq!((c.graph.n(), c.graph.m()), (2, 1));
        assert_eq!(c.old_to_new, vec![0, 1, 0]);

        let single = p3.contract(&p3.set_of([1])).unwrap();
        assert_eq!(single.graph, p3);

        let c6 = cycle(6);
        let c = c6.contract(&c6.set_of([0, 2, 4])).unwrap();
        assert_eq!((c.graph.n(), c.graph.m()), (4, 3));
        assert_eq!(c.graph.degree(c.merged), 3);

        assert!(matches!(p3.contract(&p3.set_of([0, 1])), Err(Error::Contract(_))));
        assert!(matches!(p3.contract(&VertexSet::new(3)), Err(Error::Contract(_))));
    }

    #[test]
    fn degree_into_cases() {
        let k4 = complete(4);
        assert_eq!(k4.degree_into(0, &k4.set_of([1, 2])), 2);
        assert_eq!(k4.degree_into(0, &VertexSet::new(4)), 0);
        let star = Graph::from_edges(7, (1..7).map(|v| (0, v))).unwrap();
        assert_eq!(star.degree_into(0, &star.set_of([1, 2, 3])), 3);
    }

    #[test]
    fn construction_cleans_input() {
        let (g, cleanup) = Graph::from_edges_reporting(3, [(0, 1), (1, 0), (2, 2), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(cleanup, Cleanup { self_loops: 1, duplicates: 1 });
        assert!(Graph::from_edges(2, [(0, 5)]).is_err());
    }
}
