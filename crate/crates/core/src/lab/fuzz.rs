//! Randomized end-to-end runs: generate, drive, verify.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::driver::{balanced_k, drive, replay, wigderson_bound, DriveOptions, DriveStats, EvidenceKind, Route};
use crate::error::Result;
use crate::params::{ratio_f64, Ratio};
use crate::lab::gen::{self, generate, Family};
use crate::progress::verify_coloring;

#[derive(Debug, Clone)]
pub struct FuzzSpec {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub families: Vec<Family>,
    /// Upper end of the sampled expected degree.
    pub max_avg_degree: f64,
}

impl Default for FuzzSpec {
    fn default() -> Self {
        FuzzSpec { count: 100, n_min: 4, n_max: 500, seed: 0, families: Family::ALL.to_vec(), max_avg_degree: 40.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzCase {
    pub index: usize,
    pub family: Family,
    pub n: usize,
    pub p: f64,
    /// Color-target override; the balanced value otherwise.
    pub k: Option<u64>,
    /// Threshold override, set together with `k`.
    #[serde(serialize_with = "ser_nu")]
    pub nu: Option<Ratio>,
    pub seed: u64,
}

/// Small targets force one round per contracted pair, so they are kept off
/// large graphs.
pub const SMALL_K_MAX_N: usize = 800;

/// Cases drawn from one seeded stream: `n` log-uniform in the range, expected
/// degree uniform in `[2, max_avg_degree]`, families in rotation, and every
/// other case up to [`SMALL_K_MAX_N`] vertices with a small color target and
/// threshold `ν ∈ {1, 3/2, .., 3}` so the recursion runs on small graphs too.
pub fn fuzz_cases(spec: &FuzzSpec) -> Vec<FuzzCase> {
    let mut rng = gen::rng(spec.seed);
    let (lo, hi) = ((spec.n_min.max(1) as f64).ln(), (spec.n_max.max(spec.n_min).max(1) as f64).ln());
    (0..spec.count)
        .map(|index| {
            let family = spec.families[index % spec.families.len()];
            let n = (rng.gen_range(lo..=hi).exp().round() as usize).clamp(spec.n_min, spec.n_max);
            let n = if family == Family::PlantedK4 { n.max(4) } else { n };
            let degree = rng.gen_range(2.0..=spec.max_avg_degree.max(2.0));
            let p = (degree / (n.max(2) - 1) as f64).min(1.0);
            let small_k = rng.gen_range(2..=4u64);
            let nu = Ratio::new(rng.gen_range(2..=6u64), 2);
            let small = index % 2 == 1 && n <= SMALL_K_MAX_N;
            let seed = rng.gen::<u64>();
            FuzzCase { index, family, n, p, k: small.then_some(small_k), nu: small.then_some(nu), seed }
        })
        .collect()
}

fn ser_nu<S: serde::Serializer>(nu: &Option<Ratio>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match nu {
        Some(r) => s.serialize_some(&ratio_f64(r)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzRecord {
    pub case: FuzzCase,
    /// Family actually generated; structured cases that do not fit fall back
    /// to planted.
    pub family: Family,
    pub m: usize,
    pub colors: usize,
    pub kt_colors: usize,
    pub wigderson_colors: usize,
    pub wigderson_bound: usize,
    pub route: Route,
    pub proper: bool,
    pub replay_ok: bool,
    pub three_colorable: Option<bool>,
    pub evidence: Option<EvidenceKind>,
    pub conclusive: bool,
    pub stats: DriveStats,
    pub error: Option<String>,
}

pub fn run_case(case: &FuzzCase, base: &DriveOptions) -> Result<FuzzRecord> {
    let k = match case.k {
        Some(k) => k,
        None => balanced_k(case.n as u64, base.c_k)?,
    };
    let inst = match generate(case.family, case.n, case.p, k, case.seed) {
        Ok(inst) => inst,
        Err(_) if case.family == Family::Structured => gen::gen_planted(case.n, case.p, case.seed)?,
        Err(e) => return Err(e),
    };
    let g = &inst.graph;
    let opts = DriveOptions { k: case.k.or(base.k), nu: case.nu.or(base.nu), ..base.clone() };
    let mut record = FuzzRecord {
        case: case.clone(),
        family: inst.family,
        m: g.m(),
        colors: 0,
        kt_colors: 0,
        wigderson_colors: 0,
        wigderson_bound: wigderson_bound(g.n()),
        route: Route::Kt,
        proper: false,
        replay_ok: false,
        three_colorable: inst.family.three_colorable(),
        evidence: None,
        conclusive: false,
        stats: DriveStats::default(),
        error: None,
    };
    match drive(g, &opts) {
        Ok(out) => {
            record.colors = out.colors_used;
            record.kt_colors = out.kt_colors;
            record.wigderson_colors = out.wigderson_colors;
            record.route = out.route;
            let assigned: Vec<Option<u32>> = out.coloring.iter().map(|&c| Some(c)).collect();
            record.proper = verify_coloring(g, &assigned).is_ok_and(|bad| bad.is_empty());
            record.replay_ok = replay(g, &out.history).is_ok_and(|c| c == out.kt_coloring);
            record.evidence = out.evidence.as_ref().map(|e| e.kind);
            record.conclusive = out.evidence.as_ref().is_some_and(|e| e.conclusive);
            record.stats = out.stats;
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    Ok(record)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub instances: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub improper: usize,
    pub replay_mismatches: usize,
    pub errors: usize,
    /// 3-colorable instances whose Wigderson count exceeds `3⌈√n⌉ + 1`.
    pub bound_violations: usize,
    pub above_wigderson: usize,
    /// Conclusive non-3-colorability evidence on a planted 3-colorable instance.
    pub false_evidence: usize,
    pub cuts: usize,
    pub cut_violations: usize,
    pub prunes: usize,
    pub prune_retention_failures: usize,
    pub audit_applicable: usize,
    pub audit_violations: usize,
    pub audit_vacuous: usize,
    pub breaches: usize,
    pub kt_progress: usize,
    pub per_family: Vec<(Family, usize)>,
}

impl FuzzSummary {
    pub fn is_clean(&self) -> bool {
        self.improper == 0
            && self.replay_mismatches == 0
            && self.errors == 0
            && self.bound_violations == 0
            && self.above_wigderson == 0
            && self.false_evidence == 0
            && self.cut_violations == 0
            && self.prune_retention_failures == 0
            && self.audit_violations == 0
    }
}

pub fn summarize(records: &[FuzzRecord]) -> FuzzSummary {
    let mut s = FuzzSummary { min_n: usize::MAX, ..Default::default() };
    for r in records {
        s.instances += 1;
        s.min_n = s.min_n.min(r.case.n);
        s.max_n = s.max_n.max(r.case.n);
        if r.error.is_some() {
            s.errors += 1;
            continue;
        }
        s.improper += usize::from(!r.proper);
        s.replay_mismatches += usize::from(!r.replay_ok);
        if r.three_colorable == Some(true) {
            s.bound_violations += usize::from(r.wigderson_colors > r.wigderson_bound);
            s.false_evidence += usize::from(r.conclusive);
        }
        s.above_wigderson += usize::from(r.colors > r.wigderson_colors);
        let st = &r.stats;
        s.cuts += st.cuts;
        s.cut_violations += st.cut_violations;
        s.prunes += st.prunes;
        s.prune_retention_failures += st.prune_retention_failures;
        s.audit_applicable += st.audit_applicable;
        s.audit_violations += st.audit_violations;
        s.audit_vacuous += st.audit_vacuous;
        s.breaches += st.breaches;
        s.kt_progress += st.progress_monochromatic + st.progress_assume_mono;
        match s.per_family.iter_mut().find(|(f, _)| *f == r.family) {
            Some((_, c)) => *c += 1,
            None => s.per_family.push((r.family, 1)),
        }
    }
    s.per_family.sort();
    if s.instances == 0 {
        s.min_n = 0;
    }
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub summary: FuzzSummary,
    pub records: Vec<FuzzRecord>,
}

/// Runs every case in parallel; records come back in case order.
pub fn fuzz(spec: &FuzzSpec, base: &DriveOptions) -> Result<FuzzReport> {
    let cases = fuzz_cases(spec);
    let records = cases.par_iter().map(|c| run_case(c, base)).collect::<Result<Vec<_>>>()?;
    Ok(FuzzReport { summary: summarize(&records), records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_reproducible() {
        let spec = FuzzSpec { count: 20, ..Default::default() };
        assert_eq!(fuzz_cases(&spec), fuzz_cases(&spec));
        assert!(fuzz_cases(&spec).iter().all(|c| (4..=500).contains(&c.n)));
    }

    #[test]
    fn small_fuzz_is_clean() {
        let spec = FuzzSpec { count: 30, n_max: 60, seed: 5, ..Default::default() };
        let report = fuzz(&spec, &DriveOptions::default()).unwrap();
        assert!(report.summary.is_clean(), "{:?}", report.summary);
        assert_eq!(report.summary.instances, 30);
    }
}
