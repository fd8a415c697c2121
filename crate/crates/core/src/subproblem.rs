use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A pair of disjoint vertex sets `(S, T)` below a root `r0`, seen through
/// the edges of the graph between `S` and `T` only.
#[derive(Debug, Clone)]
pub struct Subproblem<'g> {
    pub graph: &'g Graph,
    pub root: usize,
    pub s: VertexSet,
    pub t: VertexSet,
}

impl<'g> Subproblem<'g> {
    pub fn new(graph: &'g Graph, root: usize, s: VertexSet, t: VertexSet) -> Result<Self> {
        if root >= graph.n() {
            return Err(Error::VertexOutOfRange { vertex: root, n: graph.n() });
        }
        if s.universe() != graph.n() || t.universe() != graph.n() {
            return Err(Error::Input("subproblem sets must span the graph's vertex range".into()));
        }
        if !s.is_disjoint(&t) {
            return Err(Error::Input("S and T must be disjoint".into()));
        }
        Ok(Subproblem { graph, root, s, t })
    }

    pub fn degree_to_t(&self, v: usize) -> usize {
        self.graph.degree_into(v, &self.t)
    }

    pub fn degree_to_s(&self, v: usize) -> usize {
        self.graph.degree_into(v, &self.s)
    }

    /// `|E₀(S, T)|`.
    pub fn edge_count(&self) -> usize {
        self.graph.edges_between(&self.s, &self.t)
    }

    /// `N(v) ∩ S`.
    pub fn s_neighbors(&self, v: usize) -> VertexSet {
        self.graph.neighbors_within(v, &self.s)
    }

    /// `N(v) ∩ T`.
    pub fn t_neighbors(&self, v: usize) -> VertexSet {
        self.graph.neighbors_within(v, &self.t)
    }

    /// `N(N(v) ∩ S) ∩ T`, the second neighborhood of a `T`-vertex.
    pub fn second_neighborhood(&self, v: usize) -> VertexSet {
        self.graph.neighborhood_within(&self.s_neighbors(v), &self.t)
    }
}
