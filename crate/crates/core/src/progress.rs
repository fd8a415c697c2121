//! The ways a round of the algorithm can advance, and coloring validation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Progress {
    /// A set that is monochromatic in some legal 3-coloring; contracted.
    MonochromaticSet { set: VertexSet },
    /// A set whose induced subgraph is 2-colored by the given sides.
    TwoColorableSet { side_a: VertexSet, side_b: VertexSet },
    IndependentSet { set: VertexSet },
    /// A vertex of degree below `k`, deferred to greedy reinsertion.
    LowDegreePeel { vertex: usize },
    /// The multichromatic test could not rule out that `set` is
    /// monochromatic. Contracting it is an assumption the driver may undo.
    AssumeMono { set: VertexSet },
    /// `u` and `v` share more than `ν` neighbors `witness`: in any 3-coloring
    /// either `u` and `v` share a color or `witness` is monochromatic.
    CommonNeighborDisjunction { u: usize, v: usize, witness: VertexSet },
}

impl Progress {
    pub fn kind(&self) -> &'static str {
        match self {
            Progress::MonochromaticSet { .. } => "monochromatic_set",
            Progress::TwoColorableSet { .. } => "two_colorable_set",
            Progress::IndependentSet { .. } => "independent_set",
            Progress::LowDegreePeel { .. } => "low_degree_peel",
            Progress::AssumeMono { .. } => "assume_mono",
            Progress::CommonNeighborDisjunction { .. } => "common_neighbor_disjunction",
        }
    }
}

/// A color per vertex.
pub type Coloring = Vec<u32>;

pub fn colors_used(coloring: &[u32]) -> usize {
    let mut seen: Vec<u32> = coloring.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Monochromatic edges of `coloring`, or an input error if it does not
/// assign exactly one color per vertex.
pub fn verify_coloring(graph: &Graph, coloring: &[Option<u32>]) -> Result<Vec<(usize, usize)>> {
    if coloring.len() != graph.n() {
        return Err(Error::Input(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            graph.n()
        )));
    }
    if let Some(v) = coloring.iter().position(Option::is_none) {
        return Err(Error::Input(format!("vertex {v} is unassigned")));
    }
    Ok(graph.edges().filter(|&(u, v)| coloring[u] == coloring[v]).collect())
}

pub fn is_proper(graph: &Graph, coloring: &[u32]) -> bool {
    coloring.len() == graph.n() && graph.edges().all(|(u, v)| coloring[u] != coloring[v])
}

/// Renumbers colors by first appearance in vertex order.
pub fn canonicalize(coloring: &mut [u32]) {
    let mut map = std::collections::HashMap::new();
    for c in coloring.iter_mut() {
        let next = map.len() as u32;
        *c = *map.entry(*c).or_insert(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_examples() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(verify_coloring(&k2, &[Some(0), Some(1)]).unwrap().is_empty());
        assert_eq!(verify_coloring(&k2, &[Some(3), Some(3)]).unwrap(), vec![(0, 1)]);
        assert!(verify_coloring(&k2, &[Some(0), None]).is_err());
        assert!(verify_coloring(&k2, &[Some(0)]).is_err());
    }

    #[test]
    fn canonical_numbering() {
        let mut c = vec![7, 3, 7, 9];
        canonicalize(&mut c);
        assert_eq!(c, vec![0, 1, 0, 2]);
        assert_eq!(colors_used(&c), 3);
    }
}
