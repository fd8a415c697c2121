//! Cut-or-color: grow `(X, Y)` from a high-degree `t ∈ T` until `X = S`, a
//! sparse cut closes, or a multichromatic test fails to certify.
//!
//! The growth maintains: if `r0` and `t` differ in a 3-coloring (say red and
//! green), then `X` is all blue and `Y` has no blue.

use serde::Serialize;

use crate::blum::{multichromatic_test, MultichromaticResult};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::params::{above, Params};
use crate::progress::Progress;
use crate::subproblem::Subproblem;
use crate::trace::{TraceEvent, Tracer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CutColorOutcome {
    SparseCut { x: VertexSet, y: VertexSet },
    /// If `root` and `t` get different colors in some 3-coloring, `s` is
    /// monochromatic in it.
    MonoGuarantee { s: VertexSet, root: usize, t: usize },
    ProgressFound { progress: Progress },
}

impl CutColorOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            CutColorOutcome::SparseCut { .. } => "sparse_cut",
            CutColorOutcome::MonoGuarantee { .. } => "mono_guarantee",
            CutColorOutcome::ProgressFound { .. } => "progress_found",
        }
    }
}

pub fn is_high_degree(sub: &Subproblem<'_>, t: usize, p: &Params) -> bool {
    sub.t.contains(t) && above(sub.degree_to_s(t), &p.high_threshold())
}

pub fn cut_or_color(t: usize, sub: &Subproblem<'_>, p: &Params, tracer: &mut Tracer) -> Result<CutColorOutcome> {
    if !is_high_degree(sub, t, p) {
        return Err(Error::Precondition(format!(
            "cut-or-color needs a high-degree vertex of T, {t} has degree {} (threshold {})",
            if sub.t.contains(t) { sub.degree_to_s(t) } else { 0 },
            p.high_threshold()
        )));
    }
    let g = sub.graph;
    let mut x = sub.s_neighbors(t);
    let mut y = g.neighborhood_within(&x, &sub.t);

    let outcome = loop {
        // Exhaust X-extensions.
        let mut grew = true;
        while grew {
            grew = false;
            for s in sub.s.difference(&x).iter() {
                let ys = g.neighbors_within(s, &y);
                if !p.meets_nu(ys.len()) {
                    continue;
                }
                match multichromatic_test(g, &ys, p)? {
                    MultichromaticResult::Certificate(_) => {
                        x.insert(s);
                        y.union_with(&sub.t_neighbors(s));
                        grew = true;
                        tracer.emit(|| TraceEvent::XExtension { vertex: s, x: x.len(), y: y.len() });
                    }
                    MultichromaticResult::ProgressCandidate(progress) => {
                        tracer.emit(|| TraceEvent::Outcome { t, outcome: "progress_found", x: x.len(), y: y.len() });
                        return Ok(CutColorOutcome::ProgressFound { progress });
                    }
                }
            }
        }
        if x == sub.s {
            break CutColorOutcome::MonoGuarantee { s: sub.s.clone(), root: sub.root, t };
        }

        // At most one Y-extension per round.
        let mut extended = false;
        for t2 in sub.t.difference(&y).iter() {
            let x2 = sub.s_neighbors(t2);
            if !x2.is_disjoint(&x) {
                return Err(Error::InvariantBreach {
                    depth: 0,
                    detail: format!("vertex {t2} outside Y has a neighbor in X"),
                });
            }
            let y2 = g.neighborhood_within(&x2, &sub.t);
            let shared = y.intersection(&y2);
            if !p.meets_nu(shared.len()) {
                continue;
            }
            match multichromatic_test(g, &shared, p)? {
                MultichromaticResult::Certificate(_) => {
                    y.insert(t2);
                    extended = true;
                    tracer.emit(|| TraceEvent::YExtension { vertex: t2, x: x.len(), y: y.len() });
                    break;
                }
                MultichromaticResult::ProgressCandidate(progress) => {
                    tracer.emit(|| TraceEvent::Outcome { t, outcome: "progress_found", x: x.len(), y: y.len() });
                    return Ok(CutColorOutcome::ProgressFound { progress });
                }
            }
        }
        if !extended {
            break CutColorOutcome::SparseCut { x, y };
        }
    };
    tracer.emit(|| {
        let (xs, ys) = match &outcome {
            CutColorOutcome::SparseCut { x, y } => (x.len(), y.len()),
            CutColorOutcome::MonoGuarantee { s, .. } => (s.len(), 0),
            CutColorOutcome::ProgressFound { .. } => (0, 0),
        };
        TraceEvent::Outcome { t, outcome: outcome.label(), x: xs, y: ys }
    });
    Ok(outcome)
}

/// A failed structural condition of a declared sparse cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum CutViolation {
    /// `X ⊆ S` or `Y ⊆ T` fails.
    NotNested,
    /// I4: a neighbor of `t` in `S` is missing from `X`.
    StartNeighborOutside { vertex: usize },
    /// I5: an edge from `X` to `T ∖ Y`.
    EdgeLeavesCut { x_vertex: usize, t_vertex: usize },
    /// I6: a vertex of `S ∖ X` with at least `ν` neighbors in `Y`.
    XExtensionOpen { vertex: usize, degree: usize },
    /// I7: a vertex of `T ∖ Y` whose second neighborhood meets `Y` in at least `ν` vertices.
    YExtensionOpen { vertex: usize, reach: usize },
}

/// Rechecks the closure conditions of a sparse cut `(X, Y)` grown from `t`.
/// These are plain graph facts and do not depend on any coloring.
pub fn check_sparse_cut(sub: &Subproblem<'_>, x: &VertexSet, y: &VertexSet, t: usize, p: &Params) -> Vec<CutViolation> {
    let g = sub.graph;
    let mut out = Vec::new();
    if !x.is_subset(&sub.s) || !y.is_subset(&sub.t) {
        out.push(CutViolation::NotNested);
    }
    for v in sub.s_neighbors(t).iter() {
        if !x.contains(v) {
            out.push(CutViolation::StartNeighborOutside { vertex: v });
        }
    }
    let outside_y = sub.t.difference(y);
    for xv in x.iter() {
        for tv in g.neighbors_within(xv, &outside_y).iter() {
            out.push(CutViolation::EdgeLeavesCut { x_vertex: xv, t_vertex: tv });
        }
    }
    for s in sub.s.difference(x).iter() {
        let degree = g.degree_into(s, y);
        if p.meets_nu(degree) {
            out.push(CutViolation::XExtensionOpen { vertex: s, degree });
        }
    }
    for tv in outside_y.iter() {
        let reach = sub.second_neighborhood(tv).intersection_count(y);
        if p.meets_nu(reach) {
            out.push(CutViolation::YExtensionOpen { vertex: tv, reach });
        }
    }
    out
}
