//! Primitives from Blum's framework: the multichromatic test, common-neighbor
//! progress and the neighborhood-growth bound.

use num_rational::Ratio as BigRatio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, VertexSet};
use crate::params::{above, Params, Ratio};
use crate::progress::Progress;

/// Why a set is multichromatic in every legal 3-coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Odd cycle inside `G|N(X)`. A monochromatic `X` would leave `N(X)`
    /// two colors, so `N(X)` would be bipartite.
    OddCycle { cycle: Vec<usize> },
    /// An edge with both ends in `X`.
    InternalEdge { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultichromaticResult {
    Certificate(Certificate),
    /// No certificate; carries an [`Progress::AssumeMono`] for the driver.
    ProgressCandidate(Progress),
}

impl MultichromaticResult {
    pub fn is_certificate(&self) -> bool {
        matches!(self, MultichromaticResult::Certificate(_))
    }
}

/// Tests whether `x` is multichromatic in every legal 3-coloring.
///
/// Requires `|x| ≥ ν`.
pub fn multichromatic_test(g: &Graph, x: &VertexSet, p: &Params) -> Result<MultichromaticResult> {
    if !p.meets_nu(x.len()) {
        return Err(Error::Precondition(format!(
            "multichromatic test on {} vertices, below nu = {}",
            x.len(),
            p.nu
        )));
    }
    Ok(multichromatic_test_unchecked(g, x))
}

pub(crate) fn multichromatic_test_unchecked(g: &Graph, x: &VertexSet) -> MultichromaticResult {
    if let Some((u, v)) = g.edge_inside(x) {
        return MultichromaticResult::Certificate(Certificate::InternalEdge { u, v });
    }
    let nx = g.neighborhood(x);
    match g.two_color_within(&nx) {
        Bipartition::OddCycle(cycle) => MultichromaticResult::Certificate(Certificate::OddCycle { cycle }),
        Bipartition::TwoColoring { .. } => {
            MultichromaticResult::ProgressCandidate(Progress::AssumeMono { set: x.clone() })
        }
    }
}

/// Checks that `cert` is a valid certificate for `x` in `g`.
pub fn certificate_is_valid(g: &Graph, x: &VertexSet, cert: &Certificate) -> bool {
    match cert {
        Certificate::InternalEdge { u, v } => x.contains(*u) && x.contains(*v) && g.has_edge(*u, *v),
        Certificate::OddCycle { cycle } => {
            let nx = g.neighborhood(x);
            g.is_odd_cycle(cycle) && cycle.iter().all(|&c| nx.contains(c))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommonNeighbors {
    pub u: usize,
    pub v: usize,
    pub witness: VertexSet,
}

impl CommonNeighbors {
    pub fn into_progress(self) -> Progress {
        Progress::CommonNeighborDisjunction { u: self.u, v: self.v, witness: self.witness }
    }
}

/// The lexicographically first pair `u < v` with more than `ν` common
/// neighbors, by wedge counting from each `u`.
pub fn common_neighbor_check(g: &Graph, p: &Params) -> Option<CommonNeighbors> {
    let n = g.n();
    let mut counts = vec![0usize; n];
    let mut touched = Vec::new();
    for u in 0..n {
        for &a in g.adj(u) {
            for &w in g.adj(a as usize) {
                let w = w as usize;
                if w > u {
                    if counts[w] == 0 {
                        touched.push(w);
                    }
                    counts[w] += 1;
                }
            }
        }
        let hit = touched.iter().copied().filter(|&w| above(counts[w], &p.nu)).min();
        for &w in &touched {
            counts[w] = 0;
        }
        touched.clear();
        if let Some(v) = hit {
            let witness = g.common_neighbors(u, v).expect("distinct in-range vertices");
            return Some(CommonNeighbors { u, v, witness });
        }
    }
    None
}

/// Largest common neighborhood over all pairs, by direct pair scan.
pub fn max_common_neighbors(g: &Graph) -> usize {
    let mut best = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            best = best.max(g.common_neighbor_count(u, v));
        }
    }
    best
}

/// `floor(min{d/ν, |Z|} · d/2)`.
pub fn growth_lower_bound(z_size: usize, d: Ratio, nu: Ratio) -> u64 {
    let d = BigRatio::<u128>::new(*d.numer() as u128, *d.denom() as u128);
    let nu = BigRatio::<u128>::new(*nu.numer() as u128, *nu.denom() as u128);
    let reach = (d / nu).min(BigRatio::from_integer(z_size as u128));
    (reach * d / 2).floor().to_integer() as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GrowthCheck {
    Holds { measured: usize, bound: u64 },
    Violated { measured: usize, bound: u64 },
    PreconditionNotMet { reason: String },
}

/// Counts `|N(Z) ∩ U|` and compares it against [`growth_lower_bound`].
///
/// Preconditions: no two members of `Z` share more than `ν` neighbors in `g`,
/// and members of `Z` have on average at least `d` neighbors in `U`.
pub fn verify_growth(g: &Graph, z: &VertexSet, u: &VertexSet, d: u64, nu: Ratio) -> GrowthCheck {
    if z.is_empty() {
        return GrowthCheck::PreconditionNotMet { reason: "Z is empty".into() };
    }
    let members = z.to_vec();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let c = g.common_neighbor_count(a, b);
            if above(c, &nu) {
                return GrowthCheck::PreconditionNotMet {
                    reason: format!("vertices {a} and {b} share {c} neighbors, above nu = {nu}"),
                };
            }
        }
    }
    let total: usize = members.iter().map(|&v| g.degree_into(v, u)).sum();
    if (total as u128) < d as u128 * members.len() as u128 {
        return GrowthCheck::PreconditionNotMet {
            reason: format!("average degree into U is {total}/{} < {d}", members.len()),
        };
    }
    let measured = g.neighborhood_within(z, u).len();
    let bound = growth_lower_bound(z.len(), Ratio::from_integer(d), nu);
    if measured as u64 >= bound {
        GrowthCheck::Holds { measured, bound }
    } else {
        GrowthCheck::Violated { measured, bound }
    }
}
