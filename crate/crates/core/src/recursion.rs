//! The outer machinery around cut-or-color: locate a second-neighborhood
//! structure `(r0, S0, T0)`, prune it to minimum degrees `(S1, T1)`, and
//! recurse over sparse cuts until a monochromatic set or progress appears.
//!
//! The degree audits compare measured quantities against the cut-loss
//! bounds. They are diagnostics only and never steer the recursion.

use std::cmp::Reverse;
use std::collections::{BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::blum::{multichromatic_test, MultichromaticResult};
use crate::cut::{check_sparse_cut, cut_or_color, CutColorOutcome, CutViolation};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, VertexSet};
use crate::params::{validate_feasibility, Params, Ratio};
use crate::progress::Progress;
use crate::subproblem::Subproblem;
use crate::trace::{TraceEvent, Tracer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub root: usize,
    pub s0: VertexSet,
    pub t0: VertexSet,
    /// `|E(S0, T0)|`.
    pub edges: usize,
    #[serde(skip)]
    pub band: Ratio,
}

impl Structure {
    /// Average degree `S0 → T0`.
    pub fn ds0(&self) -> Ratio {
        Ratio::new(self.edges as u64, self.s0.len() as u64)
    }

    /// Average degree `T0 → S0`.
    pub fn dt0(&self) -> Ratio {
        Ratio::new(self.edges as u64, self.t0.len() as u64)
    }
}

#[derive(Debug, Clone)]
pub struct StructureOptions {
    pub max_roots: usize,
    /// Multiplicative spread allowed among `T0` degrees; must exceed 1.
    pub band: Ratio,
}

impl Default for StructureOptions {
    fn default() -> Self {
        StructureOptions { max_roots: crate::params::DEFAULT_MAX_ROOTS, band: Ratio::new(5, 4) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureSearch {
    Found(Structure),
    Progress(Progress),
}

/// Invariant violations of a claimed structure for color target `k`.
pub fn check_structure(g: &Graph, st: &Structure, k: u64) -> Vec<String> {
    let mut out = Vec::new();
    let n = g.n() as u128;
    let (s_len, t_len) = (st.s0.len() as u128, st.t0.len() as u128);
    if st.root >= g.n() {
        out.push("root out of range".to_string());
        return out;
    }
    if st.s0.is_empty() || st.t0.is_empty() {
        out.push("empty side".to_string());
        return out;
    }
    if st.s0.contains(st.root) || st.t0.contains(st.root) || !st.s0.is_disjoint(&st.t0) {
        out.push("root, S0 and T0 must be disjoint".to_string());
    }
    if !st.s0.is_subset(&g.neighbors(st.root).expect("root in range")) {
        out.push("S0 is not inside N(r0)".to_string());
    }
    if !st.t0.is_subset(&g.neighborhood(&st.s0)) {
        out.push("T0 is not inside N(S0)".to_string());
    }
    let edges = g.edges_between(&st.s0, &st.t0);
    if edges != st.edges || edges == 0 {
        out.push(format!("edge count {} does not match E(S0,T0) = {edges}", st.edges));
        return out;
    }
    let e = edges as u128;
    if s_len * s_len < e {
        out.push(format!("|S0| = {s_len} below d_S0 = {}", st.ds0()));
    }
    if t_len * k as u128 > n {
        out.push(format!("|T0| = {t_len} above n/k"));
    }
    // d_T0 / band ≤ deg ≤ d_T0 · band, with d_T0 = e / |T0| and band = a / b.
    let (a, b) = (*st.band.numer() as u128, *st.band.denom() as u128);
    for t in st.t0.iter() {
        let d = g.degree_into(t, &st.s0) as u128;
        if d * a * t_len < e * b || d * t_len * b > e * a {
            out.push(format!("T0 vertex {t} has degree {d} outside the band around d_T0 = {}", st.dt0()));
            break;
        }
    }
    // d_T0 ≥ d_S0² k / n  ⇔  |S0|² n ≥ e k |T0|.
    if s_len * s_len * n < e * k as u128 * t_len {
        out.push(format!("d_T0 = {} below d_S0^2 k / n", st.dt0()));
    }
    out
}

/// Roots in decreasing degree order, ties by id, capped at `max_roots`.
pub fn root_order(g: &Graph, max_roots: usize) -> Vec<usize> {
    let mut roots: Vec<usize> = (0..g.n()).collect();
    roots.sort_by_key(|&v| (Reverse(g.degree(v)), v));
    roots.truncate(max_roots.min(g.n()));
    roots
}

/// Smallest integer degree of each geometric band: `ceil(band^j)` for
/// `j = 0, 1, ..` up to the first value above `max_degree`.
fn band_floors(band: Ratio, max_degree: usize) -> Vec<u64> {
    let (a, b) = (BigUint::from(*band.numer()), BigUint::from(*band.denom()));
    let (mut num, mut den) = (BigUint::from(1u32), BigUint::from(1u32));
    let mut floors = Vec::new();
    loop {
        let floor = (&num + &den - 1u32) / &den;
        let floor = floor.to_u64().unwrap_or(u64::MAX);
        floors.push(floor);
        if floor > max_degree as u64 {
            return floors;
        }
        num *= &a;
        den *= &b;
    }
}

/// Builds the candidate structure rooted at `root`, or `None` if it fails
/// any structure invariant.
pub fn build_structure(g: &Graph, root: usize, k: u64, band: Ratio) -> Option<Structure> {
    let s0 = g.neighbors(root).ok()?;
    if s0.is_empty() {
        return None;
    }
    let mut into_s0 = vec![0usize; g.n()];
    for s in s0.iter() {
        for &c in g.adj(s) {
            into_s0[c as usize] += 1;
        }
    }
    let candidates: Vec<usize> =
        (0..g.n()).filter(|&c| into_s0[c] > 0 && c != root && !s0.contains(c)).collect();
    let max_degree = candidates.iter().map(|&c| into_s0[c]).max()?;
    let floors = band_floors(band, max_degree);
    // Band j holds degrees d with floors[j] ≤ d < floors[j+1]; equal floors
    // collapse, so the last j with floors[j] ≤ d wins.
    let band_of = |d: usize| floors.partition_point(|&f| f <= d as u64) - 1;
    let mut weight = vec![0usize; floors.len()];
    for &c in &candidates {
        weight[band_of(into_s0[c])] += into_s0[c];
    }
    let best = (0..weight.len()).max_by_key(|&j| (weight[j], j))?;
    let mut members: Vec<usize> = candidates.into_iter().filter(|&c| band_of(into_s0[c]) == best).collect();
    let cap = (g.n() as u64 / k.max(1)) as usize;
    if cap == 0 {
        return None;
    }
    if members.len() > cap {
        members.sort_by_key(|&c| (Reverse(into_s0[c]), c));
        members.truncate(cap);
    }
    let edges = members.iter().map(|&c| into_s0[c]).sum();
    let t0 = g.set_of(members);
    let st = Structure { root, s0, t0, edges, band };
    check_structure(g, &st, k).is_empty().then_some(st)
}

/// Valid structures over the root budget, in root order.
pub fn structure_candidates<'a>(
    g: &'a Graph,
    k: u64,
    opts: &'a StructureOptions,
    skip: &'a BTreeSet<usize>,
) -> impl Iterator<Item = Structure> + 'a {
    root_order(g, opts.max_roots)
        .into_iter()
        .filter(move |r| !skip.contains(r))
        .filter_map(move |r| build_structure(g, r, k, opts.band))
}

/// First structure in root order, or progress found on the way.
pub fn find_structure(
    g: &Graph,
    p: &Params,
    opts: &StructureOptions,
    skip: &BTreeSet<usize>,
) -> Result<StructureSearch> {
    check_search_preconditions(g, p, opts)?;
    if let Bipartition::TwoColoring { side_a, side_b } = g.two_color_or_odd_cycle() {
        return Ok(StructureSearch::Progress(Progress::TwoColorableSet { side_a, side_b }));
    }
    structure_candidates(g, p.k, opts, skip)
        .next()
        .map(StructureSearch::Found)
        .ok_or(Error::StructureNotFound { roots_tried: opts.max_roots.min(g.n()) })
}

pub(crate) fn check_search_preconditions(g: &Graph, p: &Params, opts: &StructureOptions) -> Result<()> {
    if opts.band <= Ratio::from_integer(1) {
        return Err(Error::Parameter(format!("band must exceed 1, got {}", opts.band)));
    }
    if let Some(min) = g.min_degree() {
        if (min as u64) < p.k {
            return Err(Error::Precondition(format!("minimum degree {min} is below k = {}", p.k)));
        }
    }
    Ok(())
}

/// `(S1, T1)` after iterated removal of low-degree vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pruned {
    pub s1: VertexSet,
    pub t1: VertexSet,
    pub edges_before: usize,
    pub edges_after: usize,
    pub removed_s: usize,
    pub removed_t: usize,
}

impl Pruned {
    pub fn subproblem<'g>(&self, g: &'g Graph, root: usize) -> Subproblem<'g> {
        Subproblem { graph: g, root, s: self.s1.clone(), t: self.t1.clone() }
    }
}

/// Removes `S`-vertices with degree below `d_S0/4` and `T`-vertices with
/// degree below `d_T0/4` until none remain.
pub fn prune_degrees(g: &Graph, st: &Structure) -> Result<Pruned> {
    let e0 = st.edges as u128;
    let (s_len, t_len) = (st.s0.len() as u128, st.t0.len() as u128);
    let low_s = |d: usize| (d as u128) * 4 * s_len < e0;
    let low_t = |d: usize| (d as u128) * 4 * t_len < e0;

    let mut s1 = st.s0.clone();
    let mut t1 = st.t0.clone();
    let mut degree = vec![0usize; g.n()];
    for v in st.s0.iter() {
        degree[v] = g.degree_into(v, &st.t0);
    }
    for v in st.t0.iter() {
        degree[v] = g.degree_into(v, &st.s0);
    }
    let mut queued = VertexSet::new(g.n());
    let mut queue: VecDeque<usize> = VecDeque::new();
    for v in st.s0.iter().filter(|&v| low_s(degree[v])).chain(st.t0.iter().filter(|&v| low_t(degree[v]))) {
        queued.insert(v);
        queue.push_back(v);
    }
    let (mut removed_s, mut removed_t) = (0, 0);
    while let Some(v) = queue.pop_front() {
        let in_s = s1.remove(v);
        if in_s {
            removed_s += 1;
        } else {
            t1.remove(v);
            removed_t += 1;
        }
        let other = if in_s { &t1 } else { &s1 };
        for &w in g.adj(v) {
            let w = w as usize;
            if !other.contains(w) {
                continue;
            }
            degree[w] -= 1;
            let low = if in_s { low_t(degree[w]) } else { low_s(degree[w]) };
            if low && !queued.contains(w) {
                queued.insert(w);
                queue.push_back(w);
            }
        }
    }
    if s1.is_empty() || t1.is_empty() {
        return Err(Error::PruneCollapse);
    }
    let edges_after = g.edges_between(&s1, &t1);
    let pruned = Pruned { s1, t1, edges_before: st.edges, edges_after, removed_s, removed_t };
    if !pruned.keeps_half_edges() || !pruned.keeps_t_average() {
        return Err(Error::InvariantBreach {
            depth: 0,
            detail: format!("pruning kept {} of {} edges", pruned.edges_after, pruned.edges_before),
        });
    }
    Ok(pruned)
}

impl Pruned {
    /// `|E(S1,T1)| ≥ |E(S0,T0)| / 2`.
    pub fn keeps_half_edges(&self) -> bool {
        2 * self.edges_after >= self.edges_before
    }

    /// Average `T1 → S1` degree at least `d_T0 / 2`.
    pub fn keeps_t_average(&self) -> bool {
        let t0_len = (self.t1.len() + self.removed_t) as u128;
        2 * self.edges_after as u128 * t0_len >= self.edges_before as u128 * self.t1.len() as u128
    }
}

/// `T`-vertices with degree into `S` above `d_T0/16`.
pub fn high_degree_set(sub: &Subproblem<'_>, p: &Params) -> VertexSet {
    let threshold = p.high_threshold();
    sub.graph.set_of(sub.t.iter().filter(|&t| crate::params::above(sub.degree_to_s(t), &threshold)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    Applicable,
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRow {
    pub name: &'static str,
    pub measured: f64,
    pub bound: f64,
    pub holds: bool,
    pub regime: Regime,
}

impl AuditRow {
    pub fn is_violation(&self) -> bool {
        self.regime == Regime::Applicable && !self.holds
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AuditReport {
    pub depth: usize,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.is_violation()).count()
    }
}

/// What the audits need to know about the recursion around one sparse cut.
#[derive(Debug, Clone)]
pub struct RecursionNode<'a> {
    pub depth: usize,
    pub sub: &'a Subproblem<'a>,
    pub x: &'a VertexSet,
    pub y: &'a VertexSet,
    /// Cut edges along the recursion path, including this cut.
    pub cut_edges_so_far: usize,
    pub t1_size: usize,
    /// Largest `T1 → S1` degree after pruning.
    pub t1_max_degree: usize,
    /// No two vertices share more than `ν` neighbors in the graph.
    pub pairwise_cap: bool,
}

fn big(r: Ratio) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn row(name: &'static str, measured: BigRational, bound: BigRational, holds: bool, applicable: bool) -> AuditRow {
    AuditRow {
        name,
        measured: to_f64(&measured),
        bound: to_f64(&bound),
        holds,
        regime: if applicable { Regime::Applicable } else { Regime::Vacuous },
    }
}

/// Compares a sparse cut against the cut-size and cut-loss bounds.
pub fn audit_degrees(node: &RecursionNode<'_>, p: &Params) -> AuditReport {
    let g = node.sub.graph;
    let (n, k) = (int(p.n), int(p.k));
    let (ds1, dt1, nu) = (big(p.ds1()), big(p.dt1()), big(p.nu));
    let mut rows = Vec::new();
    if ds1.is_zero() || k.is_zero() {
        return AuditReport { depth: node.depth, rows };
    }
    let k2 = &k * &k;
    let k4 = &k2 * &k2;
    let ds1_sq = &ds1 * &ds1;

    let nu_small = ds1 >= int(8) * &nu;
    let feasible = validate_feasibility(p).pass;
    let base = nu_small && feasible && node.pairwise_cap;
    let lemma7_ok = base && k <= int(2) * &ds1;
    let lemma8_ok = base && k < int(40) * &ds1 && int(node.t1_max_degree as u64) <= int(5) * &dt1;
    let total_ok = lemma8_ok && (node.t1_size as u64) * p.k <= p.n;

    let y_size = int(node.y.len() as u64);
    let y_bound = &ds1_sq * &k2 / (int(8) * &n);
    rows.push(row("lemma7_y_size", y_size.clone(), y_bound.clone(), y_size >= y_bound, lemma7_ok));

    let s_rest = node.sub.s.difference(node.x);
    let cut = int(g.edges_between(node.y, &s_rest) as u64);
    let outside = int(node.sub.t.len() as u64 - node.y.len() as u64);
    let per_vertex = int(40) * &dt1 * &n * &n / (&ds1_sq * &k4);
    let cut_bound = outside * &per_vertex;
    rows.push(row("lemma8_cut_edges", cut.clone(), cut_bound.clone(), cut <= cut_bound, lemma8_ok));

    let cumulative = int(node.cut_edges_so_far as u64);
    let total_bound = &per_vertex * &n / &k;
    rows.push(row("total_loss", cumulative.clone(), total_bound.clone(), cumulative <= total_bound, total_ok));

    let half_original = &dt1 * &ds1_sq * &k2 / (int(16) * &n);
    rows.push(row(
        "half_original_edges",
        cumulative.clone(),
        half_original.clone(),
        cumulative <= half_original,
        total_ok,
    ));

    let kept = int(g.edges_between(node.x, node.y) as u64);
    let avg = if node.y.is_empty() { int(0u64) } else { kept / &y_size };
    let half_dt1 = &dt1 / int(2);
    rows.push(row("child_average_degree", avg.clone(), half_dt1.clone(), avg >= half_dt1, lemma7_ok && total_ok));

    AuditReport { depth: node.depth, rows }
}

/// The high-degree count check at a recursion node: with `d_S1 > 19ν`,
/// `I7`, `I8` and `T`-degrees at most `5 d_T1`, more than `ν` vertices of
/// `T` are high.
pub fn audit_high_degree_count(sub: &Subproblem<'_>, high: usize, t1_max_degree: usize, p: &Params) -> AuditRow {
    let (ds1, dt1, nu) = (big(p.ds1()), big(p.dt1()), big(p.nu));
    let edges = int(sub.edge_count() as u64);
    let t_len = int(sub.t.len() as u64);
    let dt_ok = sub.t.is_empty() || edges >= &dt1 / int(2) * &t_len;
    let applicable = ds1 > int(19) * &nu && dt_ok && int(t1_max_degree as u64) <= int(5) * &dt1;
    let measured = int(high as u64);
    row("lemma6_high_degree_count", measured.clone(), nu.clone(), measured > nu, applicable)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutRecord {
    pub depth: usize,
    pub t: usize,
    pub s: usize,
    pub x: usize,
    pub y: usize,
    pub cut_edges: usize,
    pub violations: Vec<CutViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoRecord {
    pub s: VertexSet,
    pub root: usize,
    pub t: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeSummary {
    pub depth: usize,
    pub s: usize,
    pub t: usize,
    pub high: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RecursionReport {
    pub depth: usize,
    pub lineage: Vec<NodeSummary>,
    pub cuts: Vec<CutRecord>,
    pub mono_guarantees: Vec<MonoRecord>,
    /// Sets `U` certified multichromatic, one per node that got that far.
    pub certified_high_sets: Vec<VertexSet>,
    pub audits: Vec<AuditReport>,
    pub high_degree_rows: Vec<AuditRow>,
}

#[derive(Debug, Clone)]
pub struct RecursionRun {
    pub result: Result<Progress>,
    pub report: RecursionReport,
}

/// Runs the sparse-cut recursion from the pruned subproblem.
///
/// `pairwise_cap` tells the audits whether the caller has established that
/// no two vertices share more than `ν` neighbors.
pub fn recurse(start: Subproblem<'_>, base: &Pruned, p: &Params, pairwise_cap: bool, tracer: &mut Tracer) -> RecursionRun {
    let mut report = RecursionReport::default();
    let result = recurse_inner(start, base, p, pairwise_cap, tracer, &mut report);
    RecursionRun { result, report }
}

fn recurse_inner(
    start: Subproblem<'_>,
    base: &Pruned,
    p: &Params,
    pairwise_cap: bool,
    tracer: &mut Tracer,
    report: &mut RecursionReport,
) -> Result<Progress> {
    let g = start.graph;
    let t1_max_degree = base.t1.iter().map(|t| g.degree_into(t, &base.s1)).max().unwrap_or(0);
    let mut sub = start;
    let mut depth = 0;
    let mut cumulative = 0usize;
    let breach = |depth: usize, report: &RecursionReport, what: String| Error::InvariantBreach {
        depth,
        detail: format!("{what}; lineage {:?}", report.lineage),
    };
    loop {
        report.depth = depth;
        let high = high_degree_set(&sub, p);
        report.lineage.push(NodeSummary { depth, s: sub.s.len(), t: sub.t.len(), high: high.len() });
        tracer.emit(|| TraceEvent::Recurse { depth, s: sub.s.len(), t: sub.t.len(), high: high.len() });

        if let Some(v) = sub.s.iter().find(|&v| !g.neighbors_within(v, &base.t1).is_subset(&sub.t)) {
            return Err(breach(depth, report, format!("S-vertex {v} lost a T1 neighbor")));
        }
        report.high_degree_rows.push(audit_high_degree_count(&sub, high.len(), t1_max_degree, p));
        if !p.exceeds_nu(high.len()) {
            return Err(breach(
                depth,
                report,
                format!("too few high-degree vertices: {} with nu = {}", high.len(), p.nu),
            ));
        }
        match multichromatic_test(g, &high, p)? {
            MultichromaticResult::Certificate(_) => report.certified_high_sets.push(high.clone()),
            MultichromaticResult::ProgressCandidate(progress) => return Ok(progress),
        }

        let mut child = None;
        for t in high.iter() {
            let outcome = cut_or_color(t, &sub, p, tracer).map_err(|e| match e {
                Error::InvariantBreach { detail, .. } => breach(depth, report, detail),
                other => other,
            })?;
            match outcome {
                CutColorOutcome::ProgressFound { progress } => return Ok(progress),
                CutColorOutcome::MonoGuarantee { s, root, t } => {
                    report.mono_guarantees.push(MonoRecord { s, root, t });
                }
                CutColorOutcome::SparseCut { x, y } => {
                    let violations = check_sparse_cut(&sub, &x, &y, t, p);
                    let cut_edges = g.edges_between(&y, &sub.s.difference(&x));
                    cumulative += cut_edges;
                    let node = RecursionNode {
                        depth,
                        sub: &sub,
                        x: &x,
                        y: &y,
                        cut_edges_so_far: cumulative,
                        t1_size: base.t1.len(),
                        t1_max_degree,
                        pairwise_cap,
                    };
                    report.audits.push(audit_degrees(&node, p));
                    report.cuts.push(CutRecord {
                        depth,
                        t,
                        s: sub.s.len(),
                        x: x.len(),
                        y: y.len(),
                        cut_edges,
                        violations: violations.clone(),
                    });
                    if !violations.is_empty() {
                        return Err(breach(depth, report, format!("sparse cut fails closure: {violations:?}")));
                    }
                    child = Some((x, y));
                    break;
                }
            }
        }
        match child {
            None => return Ok(Progress::MonochromaticSet { set: sub.s }),
            Some((x, y)) => {
                if x.len() >= sub.s.len() {
                    return Err(breach(depth, report, "sparse cut did not shrink S".to_string()));
                }
                sub = Subproblem { graph: g, root: sub.root, s: x, t: y };
                depth += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::DEFAULT_CK;

    fn complete_tripartite(m: usize) -> Graph {
        let part = |v: usize| v / m;
        let n = 3 * m;
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).filter(move |&v| part(u) != part(v)).map(move |v| (u, v))))
            .unwrap()
    }

    #[test]
    fn tripartite_structure() {
        let g = complete_tripartite(10);
        let st = build_structure(&g, 0, 7, Ratio::new(5, 4)).expect("structure");
        assert_eq!(st.s0.len(), 20);
        assert_eq!(st.t0.len(), 4);
        assert!(st.t0.iter().all(|t| t < 10 && t != 0));
        assert_eq!(st.edges, 80);
        assert!(check_structure(&g, &st, 7).is_empty());
        let pruned = prune_degrees(&g, &st).unwrap();
        assert_eq!((pruned.removed_s, pruned.removed_t), (0, 0));
        assert_eq!(pruned.edges_after, 80);
    }

    #[test]
    fn find_structure_preconditions() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = Params::new(4, 2, DEFAULT_CK).unwrap();
        let err = find_structure(&g, &p, &StructureOptions::default(), &BTreeSet::new());
        assert!(matches!(err, Err(Error::Precondition(_))));

        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let p = Params::new(6, 2, DEFAULT_CK).unwrap();
        match find_structure(&c6, &p, &StructureOptions::default(), &BTreeSet::new()).unwrap() {
            StructureSearch::Progress(Progress::TwoColorableSet { side_a, side_b }) => {
                assert_eq!(side_a.len() + side_b.len(), 6);
            }
            other => panic!("expected bipartite shortcut, got {other:?}"),
        }
    }

    #[test]
    fn prune_cascade() {
        // Root 0, S0 = {1,2,3}, T0 = {4..=13}. S-degrees 1, 10, 10; T-degrees 2 or 3.
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 4)];
        for t in 4..14 {
            edges.push((2, t));
            edges.push((3, t));
        }
        let g = Graph::from_edges(14, edges).unwrap();
        let st = Structure {
            root: 0,
            s0: g.set_of([1, 2, 3]),
            t0: g.set_of(4..14),
            edges: 21,
            band: Ratio::new(5, 4),
        };
        // d_S0 = 7: threshold 7/4, so vertex 1 (degree 1) goes.
        let pruned = prune_degrees(&g, &st).unwrap();
        assert_eq!(pruned.s1.to_vec(), vec![2, 3]);
        assert_eq!(pruned.t1.len(), 10);
        assert_eq!(pruned.edges_after, 20);
        assert!(pruned.keeps_half_edges() && pruned.keeps_t_average());
    }

    #[test]
    fn high_degree_selection() {
        // S = {0..6}, T = {6, 7, 8} with degrees 5, 1, 3 into S; root 9.
        let mut edges = Vec::new();
        for (t, d) in [(6usize, 5usize), (7, 1), (8, 3)] {
            for s in 0..d {
                edges.push((s, t));
            }
        }
        edges.extend((0..6).map(|s| (9, s)));
        let g = Graph::from_edges(10, edges).unwrap();
        let sub = Subproblem::new(&g, 9, g.set_of(0..6), g.set_of([6, 7, 8])).unwrap();
        let base = Params::new(10, 1, DEFAULT_CK).unwrap();
        // Threshold d_T0/16 = 2.
        let p = base.clone().with_structure_degrees(Ratio::from_integer(1), Ratio::from_integer(32));
        assert_eq!(high_degree_set(&sub, &p).to_vec(), vec![6, 8]);
        // Threshold 3 is not exceeded by degree 3.
        let p = base.with_structure_degrees(Ratio::from_integer(1), Ratio::from_integer(48));
        assert_eq!(high_degree_set(&sub, &p).to_vec(), vec![6]);
    }

    #[test]
    fn band_floor_values() {
        assert_eq!(band_floors(Ratio::new(5, 4), 3), vec![1, 2, 2, 2, 3, 4]);
        assert_eq!(band_floors(Ratio::from_integer(2), 5), vec![1, 2, 4, 8]);
    }
}
