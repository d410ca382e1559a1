//! `trimod`: experiments over trinomial moduli graphs.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage error.

mod cache;
mod cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Graphs larger than this need `--budget`.
pub const DESK_LIMIT: usize = 300;

#[derive(Parser, Debug)]
#[command(name = "trimod", version, about = "Trinomial moduli graphs, cliques and residue systems")]
struct Cli {
    #[command(flatten)]
    cache: CacheArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CacheArgs {
    /// Graph cache directory [default: $TRIMOD_CACHE_DIR, else $XDG_CACHE_HOME/trimod, else ~/.cache/trimod]
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore cached graphs and rebuild (the fresh graph is still stored)
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build T(n) and export it
    Graph(GraphArgs),
    /// Maximum cliques of T(n), or the a(k) record table over a range
    Clique(CliqueArgs),
    /// Build a residue system from a clique and write its moduli file
    Moduli(ModuliArgs),
    /// Check a clique, certificate, moduli file, graph file or coloring
    Verify(VerifyArgs),
    /// Edge and coprime densities as CSV
    Stats(StatsArgs),
    /// Divisibility-sequence cliques grown from {1}
    Seq(SeqArgs),
    /// Time residue arithmetic against plain big integers
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Dot,
    EdgeList,
    AdjacencyCsv,
    /// the checksummed cache format
    Cache,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "edge-list")]
    pub format: Format,
    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seconds; required above n = 300 to acknowledge a long build
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["n", "range"])))]
pub struct CliqueArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Inclusive range `a..b`
    #[arg(long, value_parser = parse_range)]
    pub range: Option<(usize, usize)>,
    /// With --range: print the least n reaching each clique size
    #[arg(long, requires = "range")]
    pub table: bool,
    /// Seconds for the whole search; required when any n exceeds 300
    #[arg(long)]
    pub budget: Option<u64>,
    /// With --n: also write the bounding coloring to this file
    #[arg(long, requires = "n", value_name = "PATH")]
    pub coloring_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ModuliArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated clique members
    #[arg(long)]
    pub members: String,
    /// Scale: moduli are 2^(cn) - 2^(ck) + 1
    #[arg(long, default_value_t = 1)]
    pub c: u32,
    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write one scalable-pair certificate per member pair into DIR
    #[arg(long, value_name = "DIR")]
    pub certificates: Option<PathBuf>,
    /// Largest scale probed for certificates
    #[arg(long, default_value_t = 8)]
    pub c_max: u32,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("kind").required(true)
    .args(["clique", "scalable", "moduli", "graph", "coloring"])))]
pub struct VerifyArgs {
    /// `n=<n>,members=<a,b,...>` or a clique record line
    #[arg(long)]
    pub clique: Option<String>,
    /// Scalable-pair certificate file
    #[arg(long, value_name = "FILE")]
    pub scalable: Option<PathBuf>,
    /// Moduli file
    #[arg(long, value_name = "FILE")]
    pub moduli: Option<PathBuf>,
    /// Graph cache-format file; also compared against a fresh build
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Coloring file
    #[arg(long, value_name = "FILE")]
    pub coloring: Option<PathBuf>,
    /// Seconds; required to rebuild graphs above n = 300
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Inclusive range `a..b`; `a > b` gives a header-only CSV
    #[arg(long, value_parser = parse_range)]
    pub range: (usize, usize),
    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Decimal places in the density columns
    #[arg(long, default_value_t = 6)]
    pub places: u32,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    /// Number of sequences, starting from {1}
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    /// Also check pairwise resultants at n = max + 1 when max + 1 is at most this
    #[arg(long, default_value_t = 1000)]
    pub resultant_limit: usize,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Clique members [default: a maximum clique of T(n)]
    #[arg(long)]
    pub members: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub c: u32,
    #[arg(long, default_value_t = 1000)]
    pub values: usize,
    /// Bit size of sampled values [default: the capacity]
    #[arg(long)]
    pub bits: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Run every stage on one thread
    #[arg(long)]
    pub sequential: bool,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a = a.parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b = b.parse().map_err(|_| format!("bad range end {b:?}"))?;
    Ok((a, b))
}

/// Failure classes, mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verify(String),
}

impl Failure {
    pub fn usage(m: impl std::fmt::Display) -> Self {
        Failure::Usage(m.to_string())
    }

    pub fn verify(m: impl std::fmt::Display) -> Self {
        Failure::Verify(m.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = cache::GraphCache::new(&cli.cache);
    let result = match cli.command {
        Command::Graph(a) => cmd::graph(&cache, a),
        Command::Clique(a) => cmd::clique(&cache, a),
        Command::Moduli(a) => cmd::moduli(a),
        Command::Verify(a) => cmd::verify(&cache, a),
        Command::Stats(a) => cmd::stats(&cache, a),
        Command::Seq(a) => cmd::seq(a),
        Command::Bench(a) => cmd::bench(&cache, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(m)) => {
            eprintln!("FAIL: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
