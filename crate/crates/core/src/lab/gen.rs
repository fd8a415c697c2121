//! Seeded instance generators.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)`, which is
//! platform independent, and consumes the stream in a fixed order: first the
//! vertex shuffle (if any), then one `f64` per candidate pair `(u, v)` with
//! `u < v` in lexicographic order. A pair becomes an edge when the draw is
//! below `p`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::io::GraphDoc;
use crate::params::Ratio;
use crate::recursion::Structure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Balanced planted 3-partition, cross pairs with probability `p`.
    Planted,
    /// Uniform random graph; may not be 3-colorable.
    Gnp,
    /// Planted instance plus a `K4` on four random vertices.
    PlantedK4,
    /// Random bipartite graph.
    Bipartite,
    /// Planted instance built around an explicit root structure.
    Structured,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Planted, Family::Gnp, Family::PlantedK4, Family::Bipartite, Family::Structured];

    pub fn name(self) -> &'static str {
        match self {
            Family::Planted => "planted",
            Family::Gnp => "gnp",
            Family::PlantedK4 => "planted-k4",
            Family::Bipartite => "bipartite",
            Family::Structured => "structured",
        }
    }

    /// Whether every instance of the family is 3-colorable by construction.
    pub fn three_colorable(self) -> Option<bool> {
        match self {
            Family::Planted | Family::Bipartite | Family::Structured => Some(true),
            Family::PlantedK4 => Some(false),
            Family::Gnp => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: Graph,
    /// A proper 3-coloring when the family guarantees one.
    pub planted: Option<Vec<u8>>,
    pub seed: u64,
    pub family: Family,
    /// The embedded root structure of a structured instance.
    pub structure: Option<Structure>,
}

impl PlantedInstance {
    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            planted: self.planted.clone(),
            family: Some(self.family.name().to_string()),
            seed: Some(self.seed),
            ..GraphDoc::from_graph(&self.graph)
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("edge probability must lie in [0, 1], got {p}")))
    }
}

/// Part `i mod parts` for the `i`-th vertex of a seeded shuffle.
fn shuffled_parts(n: usize, parts: u8, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut part = vec![0u8; n];
    for (i, &v) in order.iter().enumerate() {
        part[v] = (i % parts as usize) as u8;
    }
    part
}

fn sample_pairs(n: usize, p: f64, rng: &mut ChaCha8Rng, allowed: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if allowed(u, v) && rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn assert_proper(g: &Graph, colors: &[u8]) {
    assert!(g.edges().all(|(u, v)| colors[u] != colors[v]), "planted partition is not proper");
}

pub fn gen_planted(n: usize, p: f64, seed: u64) -> Result<PlantedInstance> {
    check_probability(p)?;
    let mut rng = rng(seed);
    let part = shuffled_parts(n, 3, &mut rng);
    let edges = sample_pairs(n, p, &mut rng, |u, v| part[u] != part[v]);
    let graph = Graph::from_edges(n, edges)?;
    assert_proper(&graph, &part);
    Ok(PlantedInstance { graph, planted: Some(part), seed, family: Family::Planted, structure: None })
}

pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<PlantedInstance> {
    check_probability(p)?;
    let mut rng = rng(seed);
    let edges = sample_pairs(n, p, &mut rng, |_, _| true);
    Ok(PlantedInstance { graph: Graph::from_edges(n, edges)?, planted: None, seed, family: Family::Gnp, structure: None })
}

pub fn gen_bipartite(n: usize, p: f64, seed: u64) -> Result<PlantedInstance> {
    check_probability(p)?;
    let mut rng = rng(seed);
    let part = shuffled_parts(n, 2, &mut rng);
    let edges = sample_pairs(n, p, &mut rng, |u, v| part[u] != part[v]);
    let graph = Graph::from_edges(n, edges)?;
    assert_proper(&graph, &part);
    Ok(PlantedInstance { graph, planted: Some(part), seed, family: Family::Bipartite, structure: None })
}

/// A planted instance with a `K4` added on four vertices drawn after the
/// edges. Needs `n ≥ 4`.
pub fn gen_planted_k4(n: usize, p: f64, seed: u64) -> Result<PlantedInstance> {
    if n < 4 {
        return Err(Error::Parameter(format!("planted-k4 needs at least 4 vertices, got {n}")));
    }
    check_probability(p)?;
    let mut rng = rng(seed);
    let part = shuffled_parts(n, 3, &mut rng);
    let mut edges = sample_pairs(n, p, &mut rng, |u, v| part[u] != part[v]);
    let mut all: Vec<usize> = (0..n).collect();
    let (clique, _) = all.partial_shuffle(&mut rng, 4);
    let mut clique = clique.to_vec();
    clique.sort_unstable();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push((clique[i], clique[j]));
        }
    }
    Ok(PlantedInstance {
        graph: Graph::from_edges(n, edges)?,
        planted: None,
        seed,
        family: Family::PlantedK4,
        structure: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructuredSpec {
    pub n: usize,
    /// Target `S0 → T0` degree.
    pub ds: usize,
    /// Exact `T0 → S0` degree.
    pub dt: usize,
    /// Color target the structure must fit (`|T0| ≤ n/k`).
    pub k: u64,
    /// Number of disconnected `S0 × T0` blocks.
    pub blocks: usize,
    /// Edge probability among filler vertices and between filler and `T0`.
    pub p_fill: f64,
    pub seed: u64,
}

/// Builds a planted instance around root `0`, `S0 = 1..=s` and
/// `T0 = s+1..=s+t`, with `|T0| = ⌊n/k⌋` rounded down to a multiple of
/// `blocks`, `s = ⌈|T0| dt / ds⌉`, every `T0` vertex having exactly `dt`
/// neighbors in its own `S0` block, and `S0` adjacent to nothing else.
/// Consecutive `T0` vertices `2i, 2i+1` share their `S0` neighborhood.
///
/// Planted colors: root 0, `S0` 1, `T0` alternating 0 and 2. Where room
/// allows, each `T0` pair gets a triangle of filler vertices adjacent to it,
/// so neighborhoods of sets meeting both colors of `T0` contain odd cycles.
/// Remaining filler is colored at random.
pub fn gen_structured(spec: &StructuredSpec) -> Result<PlantedInstance> {
    let StructuredSpec { n, ds, dt, k, blocks, p_fill, seed } = *spec;
    check_probability(p_fill)?;
    let bad = |msg: String| Err(Error::Parameter(msg));
    if ds == 0 || dt == 0 || k == 0 || blocks == 0 {
        return bad("degrees, k and block count must be positive".into());
    }
    let t = (n / k as usize) / blocks * blocks;
    if t == 0 {
        return bad(format!("n/k = {} leaves no room for {blocks} blocks", n / k as usize));
    }
    let s = (t * dt).div_ceil(ds).div_ceil(blocks) * blocks;
    let (sb, tb) = (s / blocks, t / blocks);
    if dt > sb {
        return bad(format!("T-degree {dt} exceeds the S-block size {sb}"));
    }
    if 1 + s + t > n {
        return bad(format!("structure needs {} vertices, only {n} available", 1 + s + t));
    }
    let edges_st = t * dt;
    // d_T0 ≥ d_S0² k / n  ⇔  s² n ≥ E k t.
    if (s as u128).pow(2) * (n as u128) < edges_st as u128 * k as u128 * t as u128 {
        return bad(format!(
            "d_T0 = {dt} is below d_S0^2 k / n = {:.3}",
            (edges_st as f64 / s as f64).powi(2) * k as f64 / n as f64
        ));
    }

    let mut rng = rng(seed);
    let s_of = |i: usize| 1 + i;
    let t_of = |i: usize| 1 + s + i;
    let mut colors = vec![0u8; n];
    for i in 0..s {
        colors[s_of(i)] = 1;
    }
    for i in 0..t {
        colors[t_of(i)] = if i % 2 == 0 { 0 } else { 2 };
    }
    let filler = 1 + s + t;
    let pairs = t / 2;
    let gadgets = pairs.min((n - filler) / 3);
    let gadget_end = filler + 3 * gadgets;
    for (i, c) in colors[filler..gadget_end].iter_mut().enumerate() {
        *c = (i % 3) as u8;
    }
    for c in colors.iter_mut().skip(gadget_end) {
        *c = rng.gen_range(0..3);
    }

    let mut edges: Vec<(usize, usize)> = (0..s).map(|i| (0, s_of(i))).collect();
    for b in 0..blocks {
        for j in 0..tb {
            for i in 0..dt {
                let slot = ((j / 2) * dt + i) % sb;
                edges.push((s_of(b * sb + slot), t_of(b * tb + j)));
            }
        }
    }
    // Gadget i is a triangle (f0, f1, f2) beside the T pair (2i, 2i+1):
    // f2 sees red T vertices, f0 green ones, f1 both.
    for i in 0..gadgets {
        let (f0, f1, f2) = (filler + 3 * i, filler + 3 * i + 1, filler + 3 * i + 2);
        edges.extend([(f0, f1), (f0, f2), (f1, f2)]);
        for j in 0..(k as usize).max(2) - 1 {
            let pair = (i + j) % pairs;
            let (red, green) = (t_of(2 * pair), t_of(2 * pair + 1));
            edges.extend([(f2, red), (f0, green), (f1, if j % 2 == 0 { red } else { green })]);
        }
    }
    for u in 1 + s..n {
        for v in (u + 1).max(filler)..n {
            if colors[u] != colors[v] && rng.gen::<f64>() < p_fill {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    assert_proper(&graph, &colors);
    let structure = Structure {
        root: 0,
        s0: graph.set_of(1..=s),
        t0: graph.set_of(1 + s..1 + s + t),
        edges: edges_st,
        band: Ratio::new(5, 4),
    };
    Ok(PlantedInstance { graph, planted: Some(colors), seed, family: Family::Structured, structure: Some(structure) })
}

/// Any family from `(n, p, seed)`. Structured instances pick their degrees
/// from `p` and the supplied `k`.
pub fn generate(family: Family, n: usize, p: f64, k: u64, seed: u64) -> Result<PlantedInstance> {
    match family {
        Family::Planted => gen_planted(n, p, seed),
        Family::Gnp => gen_gnp(n, p, seed),
        Family::PlantedK4 => gen_planted_k4(n, p, seed),
        Family::Bipartite => gen_bipartite(n, p, seed),
        Family::Structured => gen_structured(&structured_spec_for(n, p, k, seed)?),
    }
}

/// A feasible structured spec for `n` and `k`: two blocks when they fit,
/// `T`-degree `2k`, `S`-degree between `k` and `3k`, and filler density `p`.
pub fn structured_spec_for(n: usize, p: f64, k: u64, seed: u64) -> Result<StructuredSpec> {
    let k = k.max(1);
    let ku = k as usize;
    for blocks in [2usize, 1] {
        for ds in [ku, 2 * ku, 3 * ku] {
            let spec = StructuredSpec { n, ds, dt: 2 * ku, k, blocks, p_fill: p, seed };
            if gen_structured_sizes_ok(&spec) {
                return Ok(spec);
            }
        }
    }
    Err(Error::Parameter(format!("no structured instance fits n = {n} with k = {k}")))
}

/// A bipartite `(Z, U)` configuration for the neighborhood-growth bound.
#[derive(Debug, Clone)]
pub struct GrowthConfig {
    pub graph: Graph,
    pub z: VertexSet,
    pub u: VertexSet,
    pub d: u64,
    pub nu: Ratio,
}

/// `z` vertices each given up to `d` random neighbors among `u` others, never
/// letting two of them share more than `⌊ν⌋` neighbors. A vertex that runs
/// out of admissible neighbors keeps fewer, so the average-degree
/// precondition can fail; callers check it.
pub fn gen_growth_config(z: usize, u: usize, d: u64, nu: Ratio, seed: u64) -> Result<GrowthConfig> {
    if z == 0 || u == 0 {
        return Err(Error::Parameter("growth configuration needs non-empty Z and U".into()));
    }
    let cap = nu.floor().to_integer() as usize;
    let mut rng = rng(seed);
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); u];
    let mut common = vec![vec![0usize; z]; z];
    let mut edges = Vec::new();
    let mut pool: Vec<usize> = (0..u).collect();
    for i in 0..z {
        pool.shuffle(&mut rng);
        let mut taken = 0;
        for &w in &pool {
            if taken as u64 == d {
                break;
            }
            if owners[w].iter().any(|&j| common[i][j] + 1 > cap) {
                continue;
            }
            for &j in &owners[w] {
                common[i][j] += 1;
                common[j][i] += 1;
            }
            owners[w].push(i);
            edges.push((i, z + w));
            taken += 1;
        }
    }
    let graph = Graph::from_edges(z + u, edges)?;
    let zs = graph.set_of(0..z);
    let us = graph.set_of(z..z + u);
    Ok(GrowthConfig { graph, z: zs, u: us, d, nu })
}

/// Structured instances paired with a threshold, for exercising the
/// recursion directly. The first group has `d_S0 > 76ν`, so the high-degree
/// count check runs in its applicable regime; the rest come from
/// [`structured_spec_for`] at small `ν`. Every seed in `seeds` is used once
/// per configuration.
pub fn structured_suite(seeds: &[u64]) -> Vec<(StructuredSpec, Ratio)> {
    let dense = [(600, 6, 80, 90), (1000, 10, 80, 100), (2000, 20, 80, 100)];
    let sparse = [(60, 3), (120, 3), (200, 4), (500, 6), (1000, 13)];
    let mut suite = Vec::new();
    for &seed in seeds {
        for &(n, k, ds, dt) in &dense {
            let spec = StructuredSpec { n, ds, dt, k, blocks: 1, p_fill: 0.01, seed };
            if gen_structured_sizes_ok(&spec) {
                suite.push((spec, Ratio::from_integer(1)));
            }
        }
        for &(n, k) in &sparse {
            for nu in [2, 3] {
                if let Ok(spec) = structured_spec_for(n, 4.0 / n as f64, k, seed) {
                    suite.push((spec, Ratio::from_integer(nu)));
                }
            }
        }
    }
    suite
}

fn gen_structured_sizes_ok(spec: &StructuredSpec) -> bool {
    let t = (spec.n / spec.k as usize) / spec.blocks * spec.blocks;
    if t == 0 {
        return false;
    }
    let s = (t * spec.dt).div_ceil(spec.ds).div_ceil(spec.blocks) * spec.blocks;
    let e = (t * spec.dt) as u128;
    spec.ds <= t / spec.blocks
        && spec.dt <= s / spec.blocks
        && 1 + s + t <= spec.n
        && (s as u128).pow(2) * spec.n as u128 >= e * spec.k as u128 * t as u128
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_fits() {
        let suite = structured_suite(&[1, 2]);
        assert_eq!(suite.len(), 26);
        assert!(suite.iter().all(|(spec, _)| gen_structured(spec).is_ok()));
    }
    use crate::recursion::check_structure;

    #[test]
    fn planted_extremes() {
        let full = gen_planted(9, 1.0, 3).unwrap();
        assert_eq!(full.graph.m(), 27);
        assert_eq!(gen_planted(9, 0.0, 3).unwrap().graph.m(), 0);
        assert!(gen_planted(5, 1.5, 0).is_err());
    }

    #[test]
    fn planted_is_reproducible() {
        let a = gen_planted(12, 0.5, 42).unwrap();
        let b = gen_planted(12, 0.5, 42).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.planted, b.planted);
        assert_ne!(gen_planted(12, 0.5, 43).unwrap().graph, a.graph);
    }

    #[test]
    fn k4_family_contains_a_clique() {
        let inst = gen_planted_k4(10, 0.0, 1).unwrap();
        assert_eq!(inst.graph.m(), 6);
    }

    #[test]
    fn structured_complete_block() {
        // ds = |T0| gives the complete S0 × T0 block.
        let spec = StructuredSpec { n: 20, ds: 4, dt: 6, k: 5, blocks: 1, p_fill: 0.0, seed: 7 };
        let inst = gen_structured(&spec).unwrap();
        let st = inst.structure.unwrap();
        assert_eq!((st.s0.len(), st.t0.len()), (6, 4));
        assert_eq!(st.edges, 24);
        assert_eq!(inst.graph.edges_between(&st.s0, &st.t0), 24);
        assert!(check_structure(&inst.graph, &st, 5).is_empty());
    }

    #[test]
    fn structured_rejects_sparse_t_side() {
        let spec = StructuredSpec { n: 100, ds: 10, dt: 1, k: 10, blocks: 1, p_fill: 0.0, seed: 0 };
        assert!(matches!(gen_structured(&spec), Err(Error::Parameter(_))));
    }

    #[test]
    fn structured_spec_passes_checker() {
        for (n, k) in [(60, 3), (200, 4), (500, 6), (1000, 13)] {
            let spec = structured_spec_for(n, 0.05, k, 9).unwrap();
            let inst = gen_structured(&spec).unwrap();
            assert!(check_structure(&inst.graph, inst.structure.as_ref().unwrap(), k).is_empty(), "{spec:?}");
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
