//! Argument definitions, input handling and exit codes.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hublab_core::engine::Discovery;
use hublab_core::DistanceMode;

use crate::commands;
use crate::formats::FormatError;
use crate::report::{InputDigest, RunReport};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Mismatch(_) => EXIT_MISMATCH,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Cap(_) => EXIT_CAP,
        }
    }
}

impl From<hublab_core::Error> for Failure {
    fn from(e: hublab_core::Error) -> Self {
        use hublab_core::Error as E;
        match e {
            E::LabelCap { .. } | E::Cap { .. } | E::OracleLimit { .. } => Failure::Cap(e.to_string()),
            E::Internal(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Content(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

#[derive(Debug, Parser)]
#[command(name = "hublab", version, about = "Eccentricities, distance sums and graph indices from hub labelings")]
pub struct Cli {
    /// Seed for every random choice (generators, sampling).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for per-source work (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write a JSON run report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph.
    Gen(GenArgs),
    /// Build, validate or tighten hub labelings.
    #[command(subcommand)]
    Label(LabelCommand),
    /// Per-vertex eccentricity or distance sum.
    Query(QueryArgs),
    /// Diameter, radius, median or Wiener index.
    Stats(StatsArgs),
    /// Topological indices of an undirected unweighted graph.
    Index(IndexArgs),
    /// Roundtrip eccentricities and distance sums from a tree decomposition.
    Twdnc(TwdncArgs),
    /// Decide whether the diameter is at most k using a low tree-depth coloring.
    Diamk(DiamkArgs),
    /// Brute-force answers from all-pairs searches.
    Oracle(OracleArgs),
    /// Run the fast and brute-force paths and compare them.
    Verify(VerifyArgs),
    /// Time the engine against plain searches over a size sweep (CSV).
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Grid,
    Complete,
    Kary,
    RandomConnected,
    RandomStrong,
    CorePeriphery,
    Split,
    PartialKtree,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Vertex count (grid: rows).
    #[arg(long)]
    pub n: usize,
    /// Grid columns.
    #[arg(long, default_value_t = 0)]
    pub cols: usize,
    /// Children per node for `kary`.
    #[arg(long, default_value_t = 2)]
    pub fanout: usize,
    /// Extra edges for `random-connected` and `core-periphery`.
    #[arg(long, default_value_t = 0)]
    pub extra: usize,
    /// Arc count for `random-strong` (default 3n).
    #[arg(long)]
    pub m: Option<usize>,
    /// Largest arc weight for weighted families.
    #[arg(long, default_value_t = 20)]
    pub wmax: u64,
    /// Core size for `core-periphery`.
    #[arg(long, default_value_t = 6)]
    pub core: usize,
    /// Clique size for `split`, width for `partial-ktree`.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Edge probability for `split` and `partial-ktree`.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// For `partial-ktree`: also write the generating decomposition (PACE .td).
    #[arg(long)]
    pub td_out: Option<PathBuf>,
    /// For `split`: also write the clique, one vertex per line.
    #[arg(long)]
    pub clique_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Pruned,
    Split,
    Elimination,
    External,
}

#[derive(Debug, Subcommand)]
pub enum LabelCommand {
    /// Build a labeling for a graph.
    Build(BuildArgs),
    /// Check a labeling against single-source searches.
    Validate(ValidateArgs),
    /// Replace stored distances by the best label estimates.
    Tighten(TightenArgs),
}

#[derive(Debug, Clone, Args)]
pub struct LabelSource {
    /// Labeling file; without it a labeling is built with `--method`.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Pruned)]
    pub method: Method,
    /// Clique for `--method split`: a file with one vertex per line, or `auto`.
    #[arg(long, default_value = "auto")]
    pub clique: String,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Graph file (`-` for stdin).
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[command(flatten)]
    pub source: LabelSource,
    /// Tighten the result.
    #[arg(long)]
    pub tighten: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Graph file (`-` for stdin).
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[arg(long)]
    pub labels: PathBuf,
    /// Also require every stored entry to equal the true distance.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct TightenArgs {
    /// Labeling file (`-` for stdin).
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Source,
    Min,
    Max,
    Roundtrip,
}

impl From<ModeArg> for DistanceMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Source => DistanceMode::Source,
            ModeArg::Min => DistanceMode::Min,
            ModeArg::Max => DistanceMode::Max,
            ModeArg::Roundtrip => DistanceMode::Roundtrip,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiscoveryArg {
    Auto,
    Search,
    Grouping,
}

impl From<DiscoveryArg> for Discovery {
    fn from(d: DiscoveryArg) -> Self {
        match d {
            DiscoveryArg::Auto => Discovery::Auto,
            DiscoveryArg::Search => Discovery::Search,
            DiscoveryArg::Grouping => Discovery::Grouping,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// Graph or labeling file (`-` for stdin). A graph gets a labeling from
    /// `--labels` or `--method`.
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[command(flatten)]
    pub source: LabelSource,
    #[arg(long, value_enum, default_value_t = ModeArg::Source)]
    pub mode: ModeArg,
    /// Largest label size the engine accepts.
    #[arg(long, default_value_t = hublab_core::engine::DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = DiscoveryArg::Auto)]
    pub discovery: DiscoveryArg,
    /// Source-mode engine without the backward witness.
    #[arg(long)]
    pub fast_source: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QueryWhat {
    Ecc,
    Dsum,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(value_enum)]
    pub what: QueryWhat,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Only this vertex.
    #[arg(long, conflicts_with = "all")]
    pub vertex: Option<usize>,
    /// Every vertex (the default).
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsWhat {
    Diameter,
    Radius,
    Median,
    Wiener,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(value_enum)]
    pub what: StatsWhat,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum IndexName {
    Wiener,
    Hyperwiener,
    Power,
    Mti,
    Harary,
    Rcw,
    Szeged,
    Pi,
    All,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    /// Graph file (`-` for stdin).
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[command(flatten)]
    pub source: LabelSource,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub which: Vec<IndexName>,
    /// Accept weighted input for wiener and power sums.
    #[arg(long)]
    pub allow_weighted: bool,
    #[arg(long, default_value_t = hublab_core::indices::INDEX_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct TwdncArgs {
    /// Graph file (`-` for stdin).
    #[arg(default_value = "-")]
    pub input: PathBuf,
    /// PACE .td file, or `auto` for a min-degree decomposition.
    #[arg(long, default_value = "auto")]
    pub td: String,
    /// Base case floor.
    #[arg(long, default_value_t = 32)]
    pub base: usize,
    /// Count accounted pairs and check node distances (n <= 100).
    #[arg(long)]
    pub audit: bool,
    /// Only print this vertex.
    #[arg(long)]
    pub vertex: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DiamkArgs {
    /// Graph file (`-` for stdin).
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Coloring file (`color <v> <c>` lines), or `auto`.
    #[arg(long, default_value = "auto")]
    pub coloring: String,
    /// Check the coloring exactly before deciding.
    #[arg(long)]
    pub check_coloring: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleWhat {
    Ecc,
    Dsum,
    Diameter,
    Radius,
    Median,
    Wiener,
    Index,
    Twdnc,
    Diamk,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub what: OracleWhat,
    /// Graph file (`-` for stdin).
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Source)]
    pub mode: ModeArg,
    /// Only print this vertex.
    #[arg(long)]
    pub vertex: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Graph file; without it graphs are generated from `--family`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Family::CorePeriphery)]
    pub family: Family,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Number of consecutive seeds starting at `--seed`.
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    #[command(flatten)]
    pub source: LabelSource,
    #[arg(long, default_value_t = hublab_core::engine::DEFAULT_CAP)]
    pub cap: usize,
    /// Extra knobs for generated graphs.
    #[arg(long, default_value_t = 2)]
    pub extra: usize,
    #[arg(long, default_value_t = 6)]
    pub core: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Family::Kary)]
    pub family: Family,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    pub fanout: usize,
    /// Sampled query vertices per size.
    #[arg(long, default_value_t = 200)]
    pub queries: usize,
    #[arg(long, value_enum, default_value_t = Method::Elimination)]
    pub method: Method,
    #[arg(long, default_value_t = hublab_core::engine::DEFAULT_CAP)]
    pub cap: usize,
    /// CSV output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

/// File or stdin contents.
pub fn read_input(path: &Path) -> Outcome<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

pub fn read_text(path: &Path, name: &str, report: &mut RunReport) -> Outcome<String> {
    let data = read_input(path)?;
    report.inputs.push(InputDigest::of(name, &data));
    String::from_utf8(data).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))
}

/// Writes to the file, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let pool = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let json = cli.json.clone();
    let result = pool.install(|| commands::dispatch(&cli));
    let (report, failure) = match result {
        Ok(r) => (Some(r), None),
        Err(f) => (None, Some(f)),
    };
    if let (Some(path), Some(report)) = (json, &report) {
        let text = match serde_json::to_string_pretty(report) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
        };
        if let Err(e) = fs::write(&path, text + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    if let Some(f) = failure {
        eprintln!("error: {f}");
        return f.code();
    }
    match report {
        Some(r) if !r.passed() => {
            for v in r.verdicts.iter().filter(|v| !v.passed) {
                eprintln!("mismatch: {} ({} cases)", v.check, v.mismatches);
            }
            EXIT_MISMATCH
        }
        _ => EXIT_OK,
    }
}
