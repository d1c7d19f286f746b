use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "antimagic", version, about = "Weighted-list and oriented quasi-antimagic labelings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Label graphs through the reduction pipeline.
    Solve(SolveArgs),
    /// Check a labeling document against a graph.
    Verify(VerifyArgs),
    /// Compute reduction-monomial coefficient certificates.
    Certify(CertifyArgs),
    /// Exhaustive search on a small instance.
    Oracle(OracleArgs),
    /// Smallest k found by the oracle, per sampled weighting.
    Sweep(SweepArgs),
    /// Print a generated graph in edge-list format.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    WeightedList,
    Oriented,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Undirected,
    Oriented,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleVariantArg {
    Antimagic,
    QuasiAntimagic,
    QuasiOriented,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Path,
    Cycle,
    Complete,
    Wheel,
    Star,
    Random,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for batches; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Edge-list files; stdin when none or "-".
    pub graphs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = VariantArg::WeightedList)]
    pub variant: VariantArg,
    /// Override the guaranteed k.
    #[arg(long)]
    pub k: Option<u64>,
    /// Weighting document (weighted-list only).
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// List document (weighted-list only).
    #[arg(long)]
    pub lists: Option<PathBuf>,
    /// Draw adversarial weights and lists from this seed where none are given.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Search node budget per Nullstellensatz step.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Include the pipeline trace in the output.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Labeling document; stdin when absent or "-".
    pub labeling: Option<PathBuf>,
    /// Edge-list file of the labeled graph.
    #[arg(long)]
    pub graph: PathBuf,
    /// Defaults to the document's variant, then weighted-list.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Defaults to the document's k, then the guaranteed bound.
    #[arg(long)]
    pub k: Option<u64>,
    /// Defaults to weights embedded in the document, then zero.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Defaults to lists embedded in the document, then {1, ..., m + k}.
    #[arg(long)]
    pub lists: Option<PathBuf>,
    /// Exempt both K2 endpoints from every other vertex, not just each other.
    #[arg(long)]
    pub relaxed_k2: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    /// Inclusive range `A..B` of vertex counts, A >= 4.
    #[arg(long = "n-range", alias = "n", default_value = "4..14")]
    pub n_range: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Edge-list file; stdin when absent or "-".
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OracleVariantArg::QuasiAntimagic)]
    pub variant: OracleVariantArg,
    #[arg(long, default_value_t = 0)]
    pub k: u64,
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long)]
    pub lists: Option<PathBuf>,
    /// Count every labeling instead of stopping at the first.
    #[arg(long, conflicts_with = "find")]
    pub count: bool,
    /// Report the first labeling found.
    #[arg(long)]
    pub find: bool,
    /// Refuse searches whose estimated size exceeds this.
    #[arg(long, default_value_t = antimagic::oracle::DEFAULT_CAP)]
    pub cap: u128,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Edge-list files; stdin when none or "-".
    pub graphs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = OracleVariantArg::QuasiAntimagic)]
    pub variant: OracleVariantArg,
    /// Largest k tried; defaults to the guaranteed bound.
    #[arg(long)]
    pub k_max: Option<u64>,
    /// Adversarial weightings per graph; 0 uses the zero weighting only.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    /// Use adversarial lists of size m + k instead of the range.
    #[arg(long)]
    pub with_lists: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = antimagic::oracle::DEFAULT_CAP)]
    pub cap: u128,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// Number of vertices.
    pub n: usize,
    /// Edge probability for random graphs.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Degree cap for random graphs.
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("ANTIMAGIC_LOG"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Verify(args) => commands::verify(args),
        Command::Certify(args) => commands::certify(args),
        Command::Oracle(args) => commands::oracle(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Gen(args) => commands::gen(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("antimagic: {e}");
            e.exit_code()
        }
    }
}
