//! `ktcolor`: generate, color, verify and benchmark graphs.
//!
//! Exit codes: 0 ok, 1 verify found a conflict, 2 input error, 3 internal
//! invariant breach.

mod cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ktcolor::lab::gen::Family;

#[derive(Parser)]
#[command(name = "ktcolor", version, about = "Combinatorial coloring of 3-colorable graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from one of the families.
    Gen(GenArgs),
    /// Color a graph and print the result as JSON.
    Color(ColorArgs),
    /// Check a coloring against a graph.
    Verify(VerifyArgs),
    /// Exhaustive answers for graphs of at most 25 vertices.
    Oracle(OracleArgs),
    /// Generate, color and verify many random instances.
    Fuzz(FuzzArgs),
    /// Compare greedy, Wigderson and the round loop across sizes.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dimacs,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Overrides for the round loop.
#[derive(Args, Clone)]
pub struct DriveFlags {
    /// Color target; the balanced value for n when omitted.
    #[arg(long)]
    k: Option<u64>,
    /// Constant in k = c_k (n/d)^(4/7).
    #[arg(long, default_value_t = ktcolor::params::DEFAULT_CK)]
    ck: f64,
    /// Common-neighbor threshold replacing n/k², as `a/b` or a decimal.
    #[arg(long)]
    nu: Option<String>,
    /// Roots tried per structure search.
    #[arg(long, default_value_t = ktcolor::params::DEFAULT_MAX_ROOTS)]
    max_roots: usize,
    /// Degree band factor for T0, as `a/b` or a decimal above 1.
    #[arg(long, default_value = "5/4")]
    band: String,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long, default_value = "planted")]
    family: Family,
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Edge probability.
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Color target the structured family is sized for.
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, value_enum, default_value = "dimacs")]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ColorArgs {
    /// Graph file; stdin when omitted or `-`.
    input: Option<PathBuf>,
    /// Input format; detected from the first character when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    drive: DriveFlags,
    /// Include the event stream in the output.
    #[arg(long)]
    trace: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    input: PathBuf,
    /// Output of `color`, a JSON array, or whitespace-separated colors.
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
pub struct OracleArgs {
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Comma-separated 0-based vertex set for the multichromatic queries.
    #[arg(long, value_delimiter = ',')]
    set: Vec<usize>,
    /// With `--t`: is the set monochromatic whenever r0 and t differ?
    #[arg(long)]
    r0: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    /// Largest instance size.
    #[arg(long, default_value_t = 500)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Families to rotate through; all when omitted.
    #[arg(long = "family")]
    families: Vec<Family>,
    #[command(flatten)]
    drive: DriveFlags,
    /// Print every record, not just the summary.
    #[arg(long)]
    records: bool,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long = "family")]
    families: Vec<Family>,
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
    sizes: Vec<usize>,
    /// First seed; `--seeds` consecutive seeds are used.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    /// Fixed edge probability; expected degree `--avg-degree` otherwise.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 10.0)]
    avg_degree: f64,
    #[command(flatten)]
    drive: DriveFlags,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    /// Also write a plot of colors against n.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Record wall-clock times (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("KTCOLOR_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd::gen(a),
        Command::Color(a) => cmd::color(a),
        Command::Verify(a) => cmd::verify(a),
        Command::Oracle(a) => cmd::oracle(a),
        Command::Fuzz(a) => cmd::fuzz(a),
        Command::Bench(a) => cmd::bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ktcolor: {e}");
            e.exit_code()
        }
    }
}
