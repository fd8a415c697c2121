//! The round loop that turns progress into a complete coloring.
//!
//! Each round peels low-degree vertices, then tries in order: the edgeless
//! and bipartite shortcuts, the common-neighbor disjunction, one pass of the
//! structure recursion, and finally a Wigderson step. Every step either
//! removes colored vertices or contracts an independent set, so any coloring
//! of the final graph lifts to a proper coloring of the input regardless of
//! whether the input is 3-colorable.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::blum::common_neighbor_check;
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, VertexSet};
use crate::params::{color_target, Params, Ratio, DEFAULT_CK, DEFAULT_MAX_ROOTS};
use crate::progress::{canonicalize, colors_used, is_proper, Coloring, Progress};
use crate::recursion::{
    check_search_preconditions, prune_degrees, recurse, structure_candidates, Regime, StructureOptions,
};
use crate::trace::{TraceEvent, Tracer};

#[derive(Debug, Clone)]
pub struct DriveOptions {
    /// Color target; the balanced value for `n` when unset.
    pub k: Option<u64>,
    pub c_k: f64,
    /// Replaces `n/k²` in every round when set.
    pub nu: Option<Ratio>,
    pub max_roots: usize,
    pub band: Ratio,
    /// Nesting limit for explored disjunction forks.
    pub max_live_forks: usize,
    pub max_backtracks: usize,
    pub max_checkpoints: usize,
    pub trace: bool,
}

impl Default for DriveOptions {
    fn default() -> Self {
        DriveOptions {
            k: None,
            c_k: DEFAULT_CK,
            nu: None,
            max_roots: DEFAULT_MAX_ROOTS,
            band: Ratio::new(5, 4),
            max_live_forks: 8,
            max_backtracks: 64,
            max_checkpoints: 32,
            trace: false,
        }
    }
}

/// Smallest `k` with `c_k (n/k)^(4/7) ≤ k`, i.e. the color target when the
/// minimum degree is `k` itself.
pub fn balanced_k(n: u64, c_k: f64) -> Result<u64> {
    if n == 0 {
        return Ok(1);
    }
    let mut k = 1;
    while color_target(n, k.min(n), c_k)? > k {
        k += 1;
    }
    Ok(k)
}

/// One entry of the contraction and coloring history. Vertices are named by
/// the smallest original id in their class at the time of the step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    Merge { reps: Vec<usize> },
    Assign { color: u32, reps: Vec<usize> },
    /// Classes colored one by one with the smallest free color.
    Greedy { reps: Vec<usize> },
    Peel { rep: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceKind {
    K4,
    OddWheel,
    /// A set derived as monochromatic contains an edge.
    MonoConflict,
}

/// A subgraph of the current graph that no 3-coloring admits. `groups` are
/// the original vertices behind each witness vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub kind: EvidenceKind,
    pub groups: Vec<Vec<usize>>,
    /// No unverified assumption was in force when the witness was found, so
    /// the input itself is not 3-colorable.
    pub conclusive: bool,
}

/// The partially processed graph together with everything needed to lift a
/// coloring back to the input.
#[derive(Debug, Clone)]
pub struct ColoringState {
    pub graph: Graph,
    /// Original vertices behind each current vertex, ascending.
    pub classes: Vec<Vec<usize>>,
    pub colors: Vec<Option<u32>>,
    pub next_color: u32,
    pub peeled: Vec<Vec<usize>>,
    pub history: Vec<Step>,
    /// Active contractions of sets that were only assumed monochromatic.
    pub assumptions: usize,
    /// A disjunction was resolved by guessing.
    pub speculative: bool,
}

impl ColoringState {
    pub fn new(g: &Graph) -> Self {
        ColoringState {
            graph: g.clone(),
            classes: (0..g.n()).map(|v| vec![v]).collect(),
            colors: vec![None; g.n()],
            next_color: 0,
            peeled: Vec::new(),
            history: Vec::new(),
            assumptions: 0,
            speculative: false,
        }
    }

    fn reps(&self, set: &VertexSet) -> Vec<usize> {
        set.iter().map(|v| self.classes[v][0]).collect()
    }

    fn groups(&self, vs: &[usize]) -> Vec<Vec<usize>> {
        vs.iter().map(|&v| self.classes[v].clone()).collect()
    }

    fn remove(&mut self, set: &VertexSet) {
        let rest = self.graph.without(set);
        self.classes = rest.to_parent.iter().map(|&v| std::mem::take(&mut self.classes[v])).collect();
        self.graph = rest.graph;
    }

    /// Spends one fresh color on each non-empty part and deletes them.
    fn assign_parts(&mut self, parts: &[&VertexSet]) {
        let mut all = VertexSet::new(self.graph.n());
        for part in parts.iter().filter(|p| !p.is_empty()) {
            let color = self.next_color;
            self.next_color += 1;
            for v in part.iter() {
                for &o in &self.classes[v] {
                    self.colors[o] = Some(color);
                }
            }
            self.history.push(Step::Assign { color, reps: self.reps(part) });
            all.union_with(part);
        }
        self.remove(&all);
    }

    /// Identifies an independent set of the current graph into one vertex.
    pub fn contract(&mut self, set: &VertexSet) -> Result<()> {
        let c = self.graph.contract(set)?;
        let reps = self.reps(set);
        let mut classes = vec![Vec::new(); c.graph.n()];
        for (v, class) in std::mem::take(&mut self.classes).into_iter().enumerate() {
            classes[c.old_to_new[v]].extend(class);
        }
        classes[c.merged].sort_unstable();
        self.classes = classes;
        self.graph = c.graph;
        self.history.push(Step::Merge { reps });
        Ok(())
    }

    /// Removes every vertex of degree below `k`, cascading. Returns the
    /// number of peeled vertices.
    fn peel(&mut self, k: u64) -> usize {
        let g = &self.graph;
        let mut degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        let mut gone = VertexSet::new(g.n());
        let mut order = Vec::new();
        let mut work: BTreeSet<usize> = (0..g.n()).filter(|&v| (degree[v] as u64) < k).collect();
        while let Some(v) = work.pop_first() {
            gone.insert(v);
            order.push(v);
            for &w in g.adj(v) {
                let w = w as usize;
                if gone.contains(w) {
                    continue;
                }
                degree[w] -= 1;
                if (degree[w] as u64) < k {
                    work.insert(w);
                }
            }
        }
        for &v in &order {
            self.history.push(Step::Peel { rep: self.classes[v][0] });
            self.peeled.push(self.classes[v].clone());
        }
        if !order.is_empty() {
            self.remove(&gone);
        }
        order.len()
    }

    /// Colors every remaining class with the smallest color unused by its
    /// colored neighbors in `g0`, in ascending current id.
    fn greedy_rest(&mut self, g0: &Graph) {
        if self.graph.n() == 0 {
            return;
        }
        let reps: Vec<usize> = self.classes.iter().map(|c| c[0]).collect();
        for class in std::mem::take(&mut self.classes) {
            let color = smallest_free(g0, &self.colors, &class);
            for &o in &class {
                self.colors[o] = Some(color);
            }
        }
        self.history.push(Step::Greedy { reps });
        self.graph = Graph::empty(0);
    }

    /// Reinserts peeled classes in reverse order and renumbers colors by
    /// first appearance.
    fn finish(mut self, g0: &Graph) -> (Coloring, Vec<Step>) {
        for class in self.peeled.iter().rev() {
            let color = smallest_free(g0, &self.colors, class);
            for &o in class {
                self.colors[o] = Some(color);
            }
        }
        let mut coloring: Coloring = self.colors.iter().map(|c| c.expect("every vertex colored")).collect();
        canonicalize(&mut coloring);
        (coloring, self.history)
    }
}

fn smallest_free(g0: &Graph, colors: &[Option<u32>], class: &[usize]) -> u32 {
    let mut used: Vec<u32> =
        class.iter().flat_map(|&o| g0.adj(o).iter().filter_map(|&w| colors[w as usize])).collect();
    used.sort_unstable();
    used.dedup();
    used.iter().enumerate().find(|&(i, &c)| c != i as u32).map_or(used.len() as u32, |(i, _)| i as u32)
}

/// Rebuilds the coloring from the input graph and a history, without any of
/// the intermediate graphs.
pub fn replay(g0: &Graph, history: &[Step]) -> Result<Coloring> {
    let n = g0.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let check = |v: usize| if v < n { Ok(v) } else { Err(Error::VertexOutOfRange { vertex: v, n }) };
    for step in history {
        if let Step::Merge { reps } = step {
            for w in reps.windows(2) {
                let (a, b) = (find(&mut parent, check(w[0])?), find(&mut parent, check(w[1])?));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut members = vec![Vec::new(); n];
    for v in 0..n {
        let r = find(&mut parent, v);
        members[r].push(v);
    }
    let mut class_of = |v: usize| -> Result<Vec<usize>> { Ok(members[find(&mut parent, check(v)?)].clone()) };
    let mut colors: Vec<Option<u32>> = vec![None; n];
    let mut peeled = Vec::new();
    for step in history {
        match step {
            Step::Merge { .. } => {}
            Step::Assign { color, reps } => {
                for &r in reps {
                    for o in class_of(r)? {
                        colors[o] = Some(*color);
                    }
                }
            }
            Step::Greedy { reps } => {
                for &r in reps {
                    let class = class_of(r)?;
                    let color = smallest_free(g0, &colors, &class);
                    for o in class {
                        colors[o] = Some(color);
                    }
                }
            }
            Step::Peel { rep } => peeled.push(class_of(*rep)?),
        }
    }
    for class in peeled.iter().rev() {
        let color = smallest_free(g0, &colors, class);
        for &o in class {
            colors[o] = Some(color);
        }
    }
    let mut coloring = Vec::with_capacity(n);
    for (v, c) in colors.into_iter().enumerate() {
        coloring.push(c.ok_or_else(|| Error::Input(format!("history leaves vertex {v} uncolored")))?);
    }
    canonicalize(&mut coloring);
    Ok(coloring)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WigdersonStep {
    Progress(Progress),
    /// The hub and an odd cycle in its neighborhood.
    Evidence { hub: usize, cycle: Vec<usize> },
}

/// Two-colors the neighborhood of a maximum-degree vertex, which must have
/// degree at least `k`.
pub fn wigderson_step(g: &Graph, k: u64) -> Result<WigdersonStep> {
    let hub = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
    let hub = match hub {
        Some(v) if g.degree(v) as u64 >= k && g.degree(v) > 0 => v,
        _ => return Err(Error::Precondition(format!("no vertex of degree at least {k}"))),
    };
    let nv = g.neighbors(hub)?;
    Ok(match g.two_color_within(&nv) {
        Bipartition::TwoColoring { side_a, side_b } => {
            WigdersonStep::Progress(Progress::TwoColorableSet { side_a, side_b })
        }
        Bipartition::OddCycle(cycle) => WigdersonStep::Evidence { hub, cycle },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WigdersonRun {
    pub coloring: Coloring,
    pub colors: usize,
    pub evidence: Option<Evidence>,
}

/// The classical baseline: Wigderson steps while some degree reaches
/// `⌈√n⌉`, then greedy.
pub fn wigderson_coloring(g: &Graph) -> WigdersonRun {
    let k = (g.n() as f64).sqrt().ceil() as u64;
    let k = (1..=k + 1).find(|&c| c * c >= g.n() as u64).unwrap_or(k).max(1);
    let mut st = ColoringState::new(g);
    let mut evidence = None;
    while st.graph.n() > 0 {
        match wigderson_step(&st.graph, k) {
            Ok(WigdersonStep::Progress(Progress::TwoColorableSet { side_a, side_b })) => {
                st.assign_parts(&[&side_a, &side_b]);
            }
            Ok(WigdersonStep::Evidence { hub, cycle }) => {
                let mut vs = vec![hub];
                vs.extend(&cycle);
                evidence = Some(Evidence { kind: EvidenceKind::OddWheel, groups: st.groups(&vs), conclusive: true });
                break;
            }
            _ => break,
        }
    }
    st.greedy_rest(g);
    let (coloring, _) = st.finish(g);
    WigdersonRun { colors: colors_used(&coloring), coloring, evidence }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Kt,
    Wigderson,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DriveStats {
    pub rounds: usize,
    pub peeled: usize,
    pub progress_monochromatic: usize,
    pub progress_two_colorable: usize,
    pub progress_independent: usize,
    pub progress_assume_mono: usize,
    pub disjunctions_forced: usize,
    pub disjunction_forks: usize,
    pub disjunctions_guessed: usize,
    pub wigderson_steps: usize,
    pub fallbacks: usize,
    pub breaches: usize,
    pub backtracks: usize,
    pub structures: usize,
    pub prunes: usize,
    pub prune_collapses: usize,
    pub prune_retention_failures: usize,
    pub cuts: usize,
    pub cut_violations: usize,
    pub mono_guarantees: usize,
    pub certified_high_sets: usize,
    pub audit_applicable: usize,
    pub audit_vacuous: usize,
    pub audit_violations: usize,
    pub max_depth: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DriveOutcome {
    pub coloring: Coloring,
    pub colors_used: usize,
    pub route: Route,
    /// Colors of the round loop alone, before comparing with the baseline.
    pub kt_colors: usize,
    pub wigderson_colors: usize,
    pub evidence: Option<Evidence>,
    pub params: Params,
    pub stats: DriveStats,
    #[serde(skip)]
    pub kt_coloring: Coloring,
    #[serde(skip)]
    pub history: Vec<Step>,
    #[serde(skip)]
    pub trace: Vec<TraceEvent>,
}

#[derive(Clone)]
struct Checkpoint {
    state: ColoringState,
    root: usize,
}

#[derive(Clone)]
struct Engine {
    state: ColoringState,
    skip_roots: BTreeSet<usize>,
    checkpoints: Vec<Checkpoint>,
    backtracks: usize,
}

struct Finished {
    coloring: Coloring,
    history: Vec<Step>,
    evidence: Option<Evidence>,
}

impl Finished {
    fn key(&self) -> (usize, &[u32]) {
        (colors_used(&self.coloring), &self.coloring)
    }
}

struct Ctx<'a> {
    g0: &'a Graph,
    opts: &'a DriveOptions,
    k: u64,
    stats: DriveStats,
    tracer: Tracer,
    round: usize,
}

enum Flow {
    Continue,
    Done(Finished),
}

enum KtAttempt {
    Progress { progress: Progress, root: usize },
    Failed(String),
}

impl Ctx<'_> {
    fn params(&self, n: usize) -> Params {
        let p = Params::new(n as u64, self.k, self.opts.c_k).expect("k is at least 1");
        match self.opts.nu {
            Some(nu) => p.with_nu(nu),
            None => p,
        }
    }

    fn progress(&mut self, kind: &'static str, size: usize) {
        let round = self.round;
        self.tracer.emit(|| TraceEvent::Progress { round, kind, size });
    }

    fn fallback(&mut self, reason: String) {
        self.stats.fallbacks += 1;
        log::debug!("round {}: fallback: {reason}", self.round);
        let round = self.round;
        self.tracer.emit(|| TraceEvent::Fallback { round, reason });
    }
}

impl Engine {
    fn changed(&mut self) {
        self.skip_roots.clear();
    }

    fn run(mut self, live: usize, ctx: &mut Ctx<'_>) -> Finished {
        loop {
            ctx.round += 1;
            ctx.stats.rounds += 1;
            let peeled = self.state.peel(ctx.k);
            if peeled > 0 {
                ctx.stats.peeled += peeled;
                self.changed();
            }
            let g = &self.state.graph;
            if g.n() == 0 {
                return self.take_done(ctx, None);
            }
            if g.m() == 0 {
                let all = g.vertex_set();
                ctx.stats.progress_independent += 1;
                ctx.progress("independent_set", all.len());
                self.state.assign_parts(&[&all]);
                self.changed();
                continue;
            }
            if let Bipartition::TwoColoring { side_a, side_b } = g.two_color_or_odd_cycle() {
                ctx.stats.progress_two_colorable += 1;
                ctx.progress("two_colorable_set", g.n());
                self.state.assign_parts(&[&side_a, &side_b]);
                self.changed();
                continue;
            }
            let p = ctx.params(g.n());
            // Disjunctions need at least two common neighbors to say anything.
            let cap = if p.nu < Ratio::from_integer(1) { p.clone().with_nu(Ratio::from_integer(1)) } else { p.clone() };
            if let Some(cn) = common_neighbor_check(g, &cap) {
                match self.disjunction(cn.u, cn.v, cn.witness, live, ctx) {
                    Flow::Continue => continue,
                    Flow::Done(f) => return f,
                }
            }
            let pairwise_cap = cap.nu == p.nu;
            let flow = match self.kt_attempt(&p, pairwise_cap, ctx) {
                KtAttempt::Progress { progress, root } => self.apply_kt(progress, root, ctx),
                KtAttempt::Failed(reason) => {
                    ctx.fallback(reason);
                    self.wigderson(ctx)
                }
            };
            if let Flow::Done(f) = flow {
                return f;
            }
        }
    }

    fn conclusive(&self) -> bool {
        self.state.assumptions == 0 && !self.state.speculative
    }

    /// Backtracks to the latest assumption, or finishes greedily.
    fn evidence(&mut self, kind: EvidenceKind, witness: &[usize], ctx: &mut Ctx<'_>) -> Flow {
        let ev = Evidence { kind, groups: self.state.groups(witness), conclusive: self.conclusive() };
        if self.backtracks < ctx.opts.max_backtracks {
            if let Some(cp) = self.checkpoints.pop() {
                self.backtracks += 1;
                ctx.stats.backtracks += 1;
                let (round, depth) = (ctx.round, self.checkpoints.len());
                ctx.tracer.emit(|| TraceEvent::Backtrack { round, depth });
                self.state = cp.state;
                self.skip_roots.insert(cp.root);
                return Flow::Continue;
            }
        }
        ctx.fallback(format!("{kind:?} evidence, finishing greedily"));
        self.state.greedy_rest(ctx.g0);
        Flow::Done(self.take_done(ctx, Some(ev)))
    }

    fn disjunction(&mut self, u: usize, v: usize, w: VertexSet, live: usize, ctx: &mut Ctx<'_>) -> Flow {
        let g = &self.state.graph;
        let inner = g.edge_inside(&w);
        let pair = g.set_of([u, v]);
        if g.has_edge(u, v) {
            if let Some((a, b)) = inner {
                return self.evidence(EvidenceKind::K4, &[u, v, a, b], ctx);
            }
            ctx.stats.disjunctions_forced += 1;
            ctx.progress("common_neighbor_disjunction", w.len());
            self.state.contract(&w).expect("independent witness");
        } else if inner.is_some() {
            ctx.stats.disjunctions_forced += 1;
            ctx.progress("common_neighbor_disjunction", 2);
            self.state.contract(&pair).expect("non-adjacent pair");
        } else if live < ctx.opts.max_live_forks {
            ctx.stats.disjunction_forks += 1;
            let mut merge = self.clone();
            merge.state.contract(&pair).expect("non-adjacent pair");
            merge.changed();
            let a = merge.run(live + 1, ctx);
            let mut contract = self.clone();
            contract.state.contract(&w).expect("independent witness");
            contract.changed();
            let b = contract.run(live + 1, ctx);
            return Flow::Done(join(a, b));
        } else {
            ctx.stats.disjunctions_guessed += 1;
            ctx.progress("common_neighbor_disjunction", 2);
            self.state.speculative = true;
            self.state.contract(&pair).expect("non-adjacent pair");
        }
        self.changed();
        Flow::Continue
    }

    fn kt_attempt(&self, p: &Params, pairwise_cap: bool, ctx: &mut Ctx<'_>) -> KtAttempt {
        let g = &self.state.graph;
        let opts = StructureOptions { max_roots: ctx.opts.max_roots, band: ctx.opts.band };
        if let Err(e) = check_search_preconditions(g, p, &opts) {
            return KtAttempt::Failed(e.to_string());
        }
        for st in structure_candidates(g, p.k, &opts, &self.skip_roots) {
            ctx.stats.structures += 1;
            ctx.tracer.emit(|| TraceEvent::Structure {
                root: st.root,
                s0: st.s0.len(),
                t0: st.t0.len(),
                edges: st.edges,
            });
            let pruned = match prune_degrees(g, &st) {
                Ok(pr) => pr,
                Err(Error::PruneCollapse) => {
                    ctx.stats.prune_collapses += 1;
                    continue;
                }
                Err(e) => {
                    ctx.stats.prune_retention_failures += 1;
                    return KtAttempt::Failed(e.to_string());
                }
            };
            ctx.stats.prunes += 1;
            ctx.tracer.emit(|| TraceEvent::Pruned { s1: pruned.s1.len(), t1: pruned.t1.len(), edges: pruned.edges_after });
            let ps = p.clone().with_structure_degrees(st.ds0(), st.dt0());
            let run = recurse(pruned.subproblem(g, st.root), &pruned, &ps, pairwise_cap, &mut ctx.tracer);
            let report = &run.report;
            ctx.stats.cuts += report.cuts.len();
            ctx.stats.cut_violations += report.cuts.iter().map(|c| c.violations.len()).sum::<usize>();
            ctx.stats.mono_guarantees += report.mono_guarantees.len();
            ctx.stats.certified_high_sets += report.certified_high_sets.len();
            ctx.stats.max_depth = ctx.stats.max_depth.max(report.depth);
            let rows = report.audits.iter().flat_map(|a| a.rows.iter()).chain(report.high_degree_rows.iter());
            for row in rows {
                match row.regime {
                    Regime::Applicable => ctx.stats.audit_applicable += 1,
                    Regime::Vacuous => ctx.stats.audit_vacuous += 1,
                }
                if row.is_violation() {
                    ctx.stats.audit_violations += 1;
                    log::warn!("audit {} violated: {} vs {}", row.name, row.measured, row.bound);
                }
            }
            return match run.result {
                Ok(progress) => KtAttempt::Progress { progress, root: st.root },
                Err(e) => {
                    if matches!(e, Error::InvariantBreach { .. }) {
                        ctx.stats.breaches += 1;
                    }
                    KtAttempt::Failed(e.to_string())
                }
            };
        }
        KtAttempt::Failed("no structure".to_string())
    }

    fn apply_kt(&mut self, progress: Progress, root: usize, ctx: &mut Ctx<'_>) -> Flow {
        match progress {
            Progress::MonochromaticSet { set } if set.len() >= 2 => {
                if let Some((a, b)) = self.state.graph.edge_inside(&set) {
                    return self.evidence(EvidenceKind::MonoConflict, &[a, b], ctx);
                }
                ctx.stats.progress_monochromatic += 1;
                ctx.progress("monochromatic_set", set.len());
                self.state.contract(&set).expect("independent set");
            }
            Progress::AssumeMono { set } if set.len() >= 2 && self.state.graph.is_independent(&set) => {
                ctx.stats.progress_assume_mono += 1;
                ctx.progress("assume_mono", set.len());
                if self.checkpoints.len() >= ctx.opts.max_checkpoints {
                    self.checkpoints.remove(0);
                }
                self.checkpoints.push(Checkpoint { state: self.state.clone(), root });
                self.state.contract(&set).expect("independent set");
                self.state.assumptions += 1;
            }
            Progress::TwoColorableSet { side_a, side_b } => {
                ctx.stats.progress_two_colorable += 1;
                ctx.progress("two_colorable_set", side_a.len() + side_b.len());
                self.state.assign_parts(&[&side_a, &side_b]);
            }
            other => {
                ctx.fallback(format!("{} progress too small to apply", other.kind()));
                return self.wigderson(ctx);
            }
        }
        self.changed();
        Flow::Continue
    }

    fn wigderson(&mut self, ctx: &mut Ctx<'_>) -> Flow {
        ctx.stats.wigderson_steps += 1;
        match wigderson_step(&self.state.graph, ctx.k) {
            Ok(WigdersonStep::Progress(Progress::TwoColorableSet { side_a, side_b })) => {
                ctx.stats.progress_two_colorable += 1;
                ctx.progress("two_colorable_set", side_a.len() + side_b.len());
                self.state.assign_parts(&[&side_a, &side_b]);
                self.changed();
                Flow::Continue
            }
            Ok(WigdersonStep::Evidence { hub, cycle }) => {
                let mut witness = vec![hub];
                witness.extend(cycle);
                self.evidence(EvidenceKind::OddWheel, &witness, ctx)
            }
            Ok(WigdersonStep::Progress(other)) => unreachable!("wigderson step yields {}", other.kind()),
            Err(e) => {
                ctx.fallback(e.to_string());
                self.state.greedy_rest(ctx.g0);
                Flow::Done(self.take_done(ctx, None))
            }
        }
    }

    fn take_done(&mut self, ctx: &mut Ctx<'_>, evidence: Option<Evidence>) -> Finished {
        let state = std::mem::replace(&mut self.state, ColoringState::new(&Graph::empty(0)));
        let (coloring, history) = state.finish(ctx.g0);
        Finished { coloring, history, evidence }
    }
}

fn join(a: Finished, b: Finished) -> Finished {
    let both = match (&a.evidence, &b.evidence) {
        (Some(x), Some(y)) => x.conclusive && y.conclusive,
        _ => false,
    };
    let mut best = if b.key() < a.key() { b } else { a };
    if let Some(ev) = &mut best.evidence {
        ev.conclusive = both;
    }
    best
}

/// Colors `g` properly. Non-3-colorable inputs are legal: the result is still
/// proper, and `evidence` carries the witness that stopped the round loop.
pub fn drive(g: &Graph, opts: &DriveOptions) -> Result<DriveOutcome> {
    let n = g.n() as u64;
    let k = match opts.k {
        Some(0) => return Err(Error::Parameter("k must be at least 1".into())),
        Some(k) => k,
        None => balanced_k(n, opts.c_k)?,
    };
    let mut ctx = Ctx {
        g0: g,
        opts,
        k,
        stats: DriveStats::default(),
        tracer: if opts.trace { Tracer::enabled() } else { Tracer::disabled() },
        round: 0,
    };
    let params = ctx.params(g.n());
    let engine = Engine {
        state: ColoringState::new(g),
        skip_roots: BTreeSet::new(),
        checkpoints: Vec::new(),
        backtracks: 0,
    };
    let kt = engine.run(0, &mut ctx);
    if !is_proper(g, &kt.coloring) {
        return Err(Error::InvariantBreach { depth: 0, detail: "round loop produced an improper coloring".into() });
    }
    let replayed = replay(g, &kt.history)?;
    if replayed != kt.coloring {
        return Err(Error::InvariantBreach { depth: 0, detail: "history replay differs from the coloring".into() });
    }
    let baseline = wigderson_coloring(g);
    let kt_colors = colors_used(&kt.coloring);
    let (coloring, route) = if baseline.colors < kt_colors {
        (baseline.coloring.clone(), Route::Wigderson)
    } else {
        (kt.coloring.clone(), Route::Kt)
    };
    let evidence = kt.evidence.or(baseline.evidence);
    Ok(DriveOutcome {
        colors_used: colors_used(&coloring),
        coloring,
        route,
        kt_colors,
        wigderson_colors: baseline.colors,
        evidence,
        params,
        stats: ctx.stats,
        kt_coloring: kt.coloring,
        history: kt.history,
        trace: ctx.tracer.events().to_vec(),
    })
}

/// `3⌈√n⌉ + 1`.
pub fn wigderson_bound(n: usize) -> usize {
    let r = (n as f64).sqrt().ceil() as usize;
    let r = (r.saturating_sub(1)..=r + 1).find(|&c| c * c >= n).unwrap_or(r);
    3 * r + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tripartite(m: usize) -> Graph {
        let n = 3 * m;
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).filter(move |&v| u / m != v / m).map(move |v| (u, v))))
            .unwrap()
    }

    #[test]
    fn balanced_k_values() {
        assert_eq!(balanced_k(4, DEFAULT_CK).unwrap(), 3);
        let k = balanced_k(5000, DEFAULT_CK).unwrap();
        assert!(color_target(5000, k, DEFAULT_CK).unwrap() <= k);
        assert!(color_target(5000, k - 1, DEFAULT_CK).unwrap() > k - 1);
    }

    #[test]
    fn bipartite_gets_two_colors() {
        let g = Graph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8))).unwrap();
        let out = drive(&g, &DriveOptions { k: Some(2), ..Default::default() }).unwrap();
        assert_eq!(out.colors_used, 2);
        assert!(is_proper(&g, &out.coloring));
    }

    #[test]
    fn edgeless_gets_one_color() {
        let out = drive(&Graph::empty(5), &DriveOptions::default()).unwrap();
        assert_eq!(out.colors_used, 1);
    }

    #[test]
    fn k4_gives_four_colors_and_evidence() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let out = drive(&g, &DriveOptions::default()).unwrap();
        assert_eq!(out.colors_used, 4);
        let ev = out.evidence.expect("evidence");
        assert_eq!(ev.kind, EvidenceKind::K4);
        assert!(ev.conclusive);
    }

    #[test]
    fn tripartite_within_baseline_bound() {
        for m in [3, 5, 8, 12] {
            let g = tripartite(m);
            let out = drive(&g, &DriveOptions::default()).unwrap();
            assert!(is_proper(&g, &out.coloring));
            assert!(out.colors_used <= wigderson_bound(g.n()));
            assert!(out.colors_used <= out.wigderson_colors);
            assert_eq!(replay(&g, &out.history).unwrap(), out.kt_coloring);
        }
    }

    #[test]
    fn wigderson_star_and_wheel() {
        let star = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
        match wigderson_step(&star, 2).unwrap() {
            WigdersonStep::Progress(Progress::TwoColorableSet { side_a, side_b }) => {
                assert_eq!(side_a.len(), 5);
                assert!(side_b.is_empty());
            }
            other => panic!("{other:?}"),
        }
        let mut edges: Vec<(usize, usize)> = (1..6).map(|v| (0, v)).collect();
        edges.extend((1..6).map(|v| (v, v % 5 + 1)));
        let wheel = Graph::from_edges(6, edges).unwrap();
        assert!(matches!(wigderson_step(&wheel, 2).unwrap(), WigdersonStep::Evidence { hub: 0, .. }));
        assert!(matches!(wigderson_step(&Graph::empty(3), 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn peel_everything_when_k_is_large() {
        let g = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let out = drive(&g, &DriveOptions { k: Some(10), ..Default::default() }).unwrap();
        assert!(out.stats.peeled == 5);
        assert!(out.kt_colors <= 3);
    }

    #[test]
    fn bound_values() {
        assert_eq!(wigderson_bound(16), 13);
        assert_eq!(wigderson_bound(17), 16);
        assert_eq!(wigderson_bound(1), 4);
    }
}
