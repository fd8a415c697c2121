use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use serde::Serialize;

use ktcolor::driver::{balanced_k, drive, DriveOptions, Evidence, Route};
use ktcolor::error::Error;
use ktcolor::graph::Graph;
use ktcolor::io::{read_dimacs, read_json_graph, write_dimacs};
use ktcolor::lab::bench::{self as benchmod, Algorithm, BenchSpec, Density};
use ktcolor::lab::fuzz::{self as fuzzmod, FuzzSpec};
use ktcolor::lab::gen::{generate, Family};
use ktcolor::lab::oracle::{
    chromatic_polynomial_at_3, count_colorings, find_coloring, oracle_is_multichromatic, oracle_mono_given_diff,
    oracle_mono_somewhere, Verdict, POLYNOMIAL_LIMIT,
};
use ktcolor::params::{parse_ratio, ratio_f64, Ratio};
use ktcolor::progress::{colors_used, verify_coloring};
use ktcolor::trace::TraceEvent;

use crate::{BenchArgs, ColorArgs, DriveFlags, Format, FuzzArgs, GenArgs, OracleArgs, TableFormat, VerifyArgs};

pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Internal(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Internal(m) => write!(f, "internal invariant breach: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantBreach { .. } | Error::Contract(_) | Error::PruneCollapse => CliError::Internal(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    text
}

fn parse_graph(text: &str, format: Option<Format>) -> Result<Graph> {
    let format = format.unwrap_or(if text.trim_start().starts_with('{') { Format::Json } else { Format::Dimacs });
    match format {
        Format::Dimacs => {
            let parsed = read_dimacs(text)?;
            let c = parsed.cleanup;
            if c.self_loops + c.duplicates > 0 {
                log::warn!("dropped {} self-loops and {} duplicate edges", c.self_loops, c.duplicates);
            }
            Ok(parsed.graph)
        }
        Format::Json => Ok(read_json_graph(text)?.to_graph()?),
    }
}

fn load_graph(path: Option<&Path>, format: Option<Format>) -> Result<Graph> {
    parse_graph(&read_input(path)?, format)
}

fn drive_options(flags: &DriveFlags, trace: bool) -> Result<DriveOptions> {
    let band = parse_ratio(&flags.band)?;
    if band <= Ratio::from_integer(1) {
        return Err(CliError::Input(format!("--band must exceed 1, got {}", flags.band)));
    }
    if flags.k == Some(0) {
        return Err(CliError::Input("--k must be at least 1".into()));
    }
    if !(flags.ck > 0.0 && flags.ck.is_finite()) {
        return Err(CliError::Input(format!("--ck must be positive, got {}", flags.ck)));
    }
    Ok(DriveOptions {
        k: flags.k,
        c_k: flags.ck,
        nu: flags.nu.as_deref().map(parse_ratio).transpose()?,
        max_roots: flags.max_roots,
        band,
        trace,
        ..DriveOptions::default()
    })
}

pub fn gen(a: GenArgs) -> Result<ExitCode> {
    let k = match a.k {
        Some(k) => k,
        None => balanced_k(a.n as u64, ktcolor::params::DEFAULT_CK)?,
    };
    let inst = generate(a.family, a.n, a.p, k, a.seed)?;
    let text = match a.format {
        Format::Dimacs => {
            let mut notes = vec![format!("family {}", inst.family), format!("seed {}", a.seed), format!("p {}", a.p)];
            if let Some(planted) = &inst.planted {
                let colors: Vec<String> = planted.iter().map(u8::to_string).collect();
                notes.push(format!("planted {}", colors.join(" ")));
            }
            write_dimacs(&inst.graph, &notes)
        }
        Format::Json => {
            let mut text = serde_json::to_string(&inst.to_doc()).expect("graph serializes");
            text.push('\n');
            text
        }
    };
    write_output(a.out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ParamsOut {
    k: u64,
    c_k: f64,
    nu: String,
    nu_value: f64,
    nu_overridden: bool,
    max_roots: usize,
    band: String,
}

#[derive(Serialize)]
struct ColorOut {
    n: usize,
    m: usize,
    colors_used: usize,
    coloring: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    three_colorable_evidence: Option<Evidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceEvent>>,
    params: ParamsOut,
    route: Route,
    kt_colors: usize,
    wigderson_colors: usize,
    stats: ktcolor::driver::DriveStats,
}

pub fn color(a: ColorArgs) -> Result<ExitCode> {
    let g = load_graph(a.input.as_deref(), a.format)?;
    let opts = drive_options(&a.drive, a.trace)?;
    let out = drive(&g, &opts)?;
    let assigned: Vec<Option<u32>> = out.coloring.iter().map(|&c| Some(c)).collect();
    if !verify_coloring(&g, &assigned)?.is_empty() {
        return Err(CliError::Internal("emitted coloring is not proper".into()));
    }
    let p = &out.params;
    let doc = ColorOut {
        n: g.n(),
        m: g.m(),
        colors_used: out.colors_used,
        coloring: out.coloring.clone(),
        three_colorable_evidence: out.evidence.clone(),
        trace: a.trace.then(|| out.trace.clone()),
        params: ParamsOut {
            k: p.k,
            c_k: p.c_k,
            nu: p.nu.to_string(),
            nu_value: ratio_f64(&p.nu),
            nu_overridden: p.nu_overridden,
            max_roots: opts.max_roots,
            band: opts.band.to_string(),
        },
        route: out.route,
        kt_colors: out.kt_colors,
        wigderson_colors: out.wigderson_colors,
        stats: out.stats.clone(),
    };
    write_output(a.out.as_ref(), &to_json(&doc))?;
    Ok(ExitCode::SUCCESS)
}

/// Accepts `color` output, a JSON array, or whitespace-separated integers.
fn parse_coloring(text: &str) -> Result<Vec<u32>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("coloring: {e}")))?;
        let array = match &value {
            serde_json::Value::Object(map) => map.get("coloring"),
            other => Some(other),
        };
        let colors: Option<Vec<u32>> = array
            .and_then(|v| v.as_array())
            .map(|items| items.iter().map(|c| c.as_u64().and_then(|c| u32::try_from(c).ok())).collect())
            .flatten();
        return colors.ok_or_else(|| CliError::Input("coloring must be an array of non-negative integers".into()));
    }
    text.split_whitespace()
        .map(|tok| tok.parse::<u32>().map_err(|_| CliError::Input(format!("bad color `{tok}`"))))
        .collect()
}

#[derive(Serialize)]
struct VerifyOut {
    proper: bool,
    n: usize,
    colors_used: usize,
    conflicts: Vec<[usize; 2]>,
}

pub fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let g = load_graph(Some(&a.input), a.format)?;
    let coloring = parse_coloring(&read_input(Some(&a.coloring))?)?;
    let assigned: Vec<Option<u32>> = coloring.iter().map(|&c| Some(c)).collect();
    let conflicts = verify_coloring(&g, &assigned)?;
    let doc = VerifyOut {
        proper: conflicts.is_empty(),
        n: g.n(),
        colors_used: colors_used(&coloring),
        conflicts: conflicts.iter().map(|&(u, v)| [u, v]).collect(),
    };
    write_output(None, &to_json(&doc))?;
    Ok(if doc.proper { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct SetAnswers {
    set: Vec<usize>,
    multichromatic: Option<bool>,
    monochromatic_somewhere: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mono_given_diff: Option<Verdict>,
}

#[derive(Serialize)]
struct OracleOut {
    n: usize,
    m: usize,
    three_colorable: bool,
    colorings: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    chromatic_polynomial_at_3: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    example: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    set: Option<SetAnswers>,
}

pub fn oracle(a: OracleArgs) -> Result<ExitCode> {
    let g = load_graph(a.input.as_deref(), a.format)?;
    let colorings = count_colorings(&g)?;
    let example = find_coloring(&g, &[], &[])?;
    let set = if a.set.is_empty() {
        if a.r0.is_some() || a.t.is_some() {
            return Err(CliError::Input("--r0 and --t need --set".into()));
        }
        None
    } else {
        let x = g.set_of(a.set.iter().copied());
        if let Some(&v) = a.set.iter().find(|&&v| v >= g.n()) {
            return Err(CliError::Input(format!("vertex {v} out of range for {} vertices", g.n())));
        }
        let given = match (a.r0, a.t) {
            (Some(r0), Some(t)) if colorings > 0 => Some(oracle_mono_given_diff(&g, &x, r0, t)?),
            (Some(_), Some(_)) | (None, None) => None,
            _ => return Err(CliError::Input("--r0 and --t go together".into())),
        };
        Some(SetAnswers {
            set: x.to_vec(),
            multichromatic: if colorings > 0 { Some(oracle_is_multichromatic(&g, &x)?) } else { None },
            monochromatic_somewhere: oracle_mono_somewhere(&g, &x)?,
            mono_given_diff: given,
        })
    };
    let doc = OracleOut {
        n: g.n(),
        m: g.m(),
        three_colorable: colorings > 0,
        colorings,
        chromatic_polynomial_at_3: if g.n() <= POLYNOMIAL_LIMIT { Some(chromatic_polynomial_at_3(&g)?) } else { None },
        example,
        set,
    };
    write_output(None, &to_json(&doc))?;
    Ok(ExitCode::SUCCESS)
}

pub fn fuzz(a: FuzzArgs) -> Result<ExitCode> {
    if a.count == 0 || a.n_min == 0 || a.n < a.n_min {
        return Err(CliError::Input("need --count >= 1 and 1 <= --n-min <= --n".into()));
    }
    let spec = FuzzSpec {
        count: a.count,
        n_min: a.n_min,
        n_max: a.n,
        seed: a.seed,
        families: if a.families.is_empty() { Family::ALL.to_vec() } else { a.families.clone() },
        ..FuzzSpec::default()
    };
    let report = fuzzmod::fuzz(&spec, &drive_options(&a.drive, false)?)?;
    let text = if a.records { to_json(&report) } else { to_json(&report.summary) };
    write_output(None, &text)?;
    if report.summary.is_clean() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(CliError::Internal(format!("fuzz found failures: {:?}", report.summary)))
    }
}

pub fn bench(a: BenchArgs) -> Result<ExitCode> {
    if a.sizes.is_empty() || a.seeds == 0 {
        return Err(CliError::Input("need at least one size and one seed".into()));
    }
    let spec = BenchSpec {
        families: if a.families.is_empty() { Family::ALL.to_vec() } else { a.families.clone() },
        sizes: a.sizes.clone(),
        seeds: (a.seed..a.seed + a.seeds).collect(),
        density: match a.p {
            Some(p) => Density::Probability(p),
            None => Density::AverageDegree(a.avg_degree),
        },
        algorithms: Algorithm::ALL.to_vec(),
        drive: drive_options(&a.drive, false)?,
        timing: a.timing,
    };
    let rows = benchmod::bench(&spec)?;
    let text = match a.format {
        TableFormat::Csv => benchmod::to_csv(&rows),
        TableFormat::Json => {
            let mut t = benchmod::to_json(&rows);
            t.push('\n');
            t
        }
    };
    write_output(a.out.as_ref(), &text)?;
    if let Some(path) = &a.svg {
        write_output(Some(path), &benchmod::to_svg(&rows))?;
    }
    Ok(ExitCode::SUCCESS)
}
