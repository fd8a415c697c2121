//! Side-by-side runs of the greedy, Wigderson and round-loop colorings.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::driver::{drive, wigderson_bound, wigderson_coloring, DriveOptions};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lab::gen::{gen_planted, generate, Family};
use crate::progress::{colors_used, Coloring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Greedy,
    Wigderson,
    Kt,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Greedy, Algorithm::Wigderson, Algorithm::Kt];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Wigderson => "wigderson",
            Algorithm::Kt => "kt",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown algorithm `{s}`")))
    }
}

/// Smallest free color in ascending vertex order.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let mut colors: Vec<Option<u32>> = vec![None; g.n()];
    for v in 0..g.n() {
        let mut used: Vec<u32> = g.adj(v).iter().filter_map(|&w| colors[w as usize]).collect();
        used.sort_unstable();
        used.dedup();
        let c = used.iter().enumerate().find(|&(i, &c)| c != i as u32).map_or(used.len(), |(i, _)| i);
        colors[v] = Some(c as u32);
    }
    colors.into_iter().map(|c| c.expect("assigned")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Density {
    Probability(f64),
    /// Expected degree; the edge probability is `d / (n - 1)`, capped at 1.
    AverageDegree(f64),
}

impl Density {
    pub fn probability(self, n: usize) -> f64 {
        match self {
            Density::Probability(p) => p,
            Density::AverageDegree(d) => (d / (n.max(2) - 1) as f64).min(1.0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub families: Vec<Family>,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub density: Density,
    pub algorithms: Vec<Algorithm>,
    pub drive: DriveOptions,
    /// Record wall-clock times. Off by default so output is reproducible.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub colors: usize,
    pub wigderson_bound: usize,
    pub time_ms: Option<f64>,
    pub breaches: usize,
    pub audit_applicable: usize,
    pub audit_violations: usize,
    pub audit_vacuous: usize,
}

fn run_one(g: &Graph, algorithm: Algorithm, opts: &DriveOptions) -> Result<(usize, [usize; 4])> {
    Ok(match algorithm {
        Algorithm::Greedy => (colors_used(&greedy_coloring(g)), [0; 4]),
        Algorithm::Wigderson => (wigderson_coloring(g).colors, [0; 4]),
        Algorithm::Kt => {
            let out = drive(g, opts)?;
            let s = &out.stats;
            (out.colors_used, [s.breaches, s.audit_applicable, s.audit_violations, s.audit_vacuous])
        }
    })
}

/// One row per instance and algorithm, sorted by family, size, seed and
/// algorithm. Structured instances that do not fit fall back to planted and
/// are reported under that family.
pub fn bench(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    let mut jobs = Vec::new();
    for &family in &spec.families {
        for &n in &spec.sizes {
            for &seed in &spec.seeds {
                jobs.push((family, n, seed));
            }
        }
    }
    let per_instance: Vec<Result<Vec<BenchRow>>> = jobs
        .par_iter()
        .map(|&(family, n, seed)| {
            let k = match spec.drive.k {
                Some(k) => k,
                None => crate::driver::balanced_k(n as u64, spec.drive.c_k)?,
            };
            let p = spec.density.probability(n);
            let inst = match generate(family, n, p, k, seed) {
                Ok(inst) => inst,
                Err(_) if family == Family::Structured => gen_planted(n, p, seed)?,
                Err(e) => return Err(e),
            };
            let g = &inst.graph;
            spec.algorithms
                .iter()
                .map(|&algorithm| {
                    let start = Instant::now();
                    let (colors, [breaches, audit_applicable, audit_violations, audit_vacuous]) =
                        run_one(g, algorithm, &spec.drive)?;
                    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
                    Ok(BenchRow {
                        family: inst.family,
                        n: g.n(),
                        m: g.m(),
                        seed,
                        algorithm,
                        colors,
                        wigderson_bound: wigderson_bound(g.n()),
                        time_ms: spec.timing.then_some(elapsed),
                        breaches,
                        audit_applicable,
                        audit_violations,
                        audit_vacuous,
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_instance {
        rows.extend(r?);
    }
    rows.sort_by(|a, b| (a.family, a.n, a.seed, a.algorithm).cmp(&(b.family, b.n, b.seed, b.algorithm)));
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "family",
        "n",
        "m",
        "seed",
        "algorithm",
        "colors",
        "wigderson_bound",
        "time_ms",
        "breaches",
        "audit_applicable",
        "audit_violations",
        "audit_vacuous",
    ])
    .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.family.name().to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.seed.to_string(),
            r.algorithm.name().to_string(),
            r.colors.to_string(),
            r.wigderson_bound.to_string(),
            r.time_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
            r.breaches.to_string(),
            r.audit_applicable.to_string(),
            r.audit_violations.to_string(),
            r.audit_vacuous.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn to_json(rows: &[BenchRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}

/// Line plot of mean colors against `n`, one series per algorithm.
pub fn to_svg(rows: &[BenchRow]) -> String {
    let (w, h, pad) = (640.0, 400.0, 48.0);
    let mut series: Vec<(Algorithm, Vec<(usize, f64)>)> = Vec::new();
    for alg in Algorithm::ALL {
        let mut points: Vec<(usize, f64)> = Vec::new();
        let mut sizes: Vec<usize> = rows.iter().filter(|r| r.algorithm == alg).map(|r| r.n).collect();
        sizes.sort_unstable();
        sizes.dedup();
        for n in sizes {
            let cs: Vec<usize> = rows.iter().filter(|r| r.algorithm == alg && r.n == n).map(|r| r.colors).collect();
            points.push((n, cs.iter().sum::<usize>() as f64 / cs.len() as f64));
        }
        if !points.is_empty() {
            series.push((alg, points));
        }
    }
    let max_n = rows.iter().map(|r| r.n).max().unwrap_or(1).max(1) as f64;
    let max_c = rows.iter().map(|r| r.colors).max().unwrap_or(1).max(1) as f64;
    let x = |n: usize| pad + (w - 2.0 * pad) * n as f64 / max_n;
    let y = |c: f64| h - pad - (h - 2.0 * pad) * c / max_c;
    let palette = ["#1b9e77", "#d95f02", "#7570b3"];

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{pad} {pad} V{b} H{r}" fill="none" stroke="black"/>"#,
        b = h - pad,
        r = w - pad
    );
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">n (max {max_n})</text>"#, w / 2.0, h - 12.0);
    let _ = writeln!(svg, r#"<text x="12" y="{}" transform="rotate(-90 12 {0})" text-anchor="middle">colors (max {max_c})</text>"#, h / 2.0);
    for (i, (alg, points)) in series.iter().enumerate() {
        let color = palette[*alg as usize % palette.len()];
        let d: Vec<String> = points
            .iter()
            .enumerate()
            .map(|(j, &(n, c))| format!("{}{:.1} {:.1}", if j == 0 { "M" } else { "L" }, x(n), y(c)))
            .collect();
        let _ = writeln!(svg, r#"<path d="{}" fill="none" stroke="{color}" stroke-width="2"/>"#, d.join(" "));
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            w - pad - 80.0,
            pad + 16.0 * i as f64,
            alg.name()
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_count_and_order() {
        let spec = BenchSpec {
            families: vec![Family::Planted],
            sizes: vec![30, 12],
            seeds: vec![2, 1],
            density: Density::Probability(0.3),
            algorithms: Algorithm::ALL.to_vec(),
            drive: DriveOptions::default(),
            timing: false,
        };
        let rows = bench(&spec).unwrap();
        assert_eq!(rows.len(), 12);
        assert_eq!((rows[0].n, rows[0].seed, rows[0].algorithm), (12, 1, Algorithm::Greedy));
        assert!(rows.iter().all(|r| r.time_ms.is_none()));
        let csv = to_csv(&rows);
        assert_eq!(csv.lines().count(), 13);
        assert!(to_svg(&rows).starts_with("<svg"));
    }

    #[test]
    fn greedy_is_proper() {
        let g = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let c = greedy_coloring(&g);
        assert!(crate::progress::is_proper(&g, &c));
        assert_eq!(colors_used(&c), 3);
    }
}
