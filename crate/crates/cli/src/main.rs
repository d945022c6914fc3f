use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

mod bench;
mod commands;
mod record;

#[derive(Parser, Debug)]
#[command(
    name = "netquake",
    version,
    about = "Attack robustness of undirected networks"
)]
struct Cli {
    /// Worker threads for centrality computations and bench cells.
    #[arg(long, global = true, env = "NETQUAKE_THREADS", default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one attack strategy and report its robustness curve.
    Attack(AttackArgs),
    /// Estimate robustness with the two-stage sampled search.
    Qre(QreArgs),
    /// Generate a random network as an edge list.
    Gen(GenArgs),
    /// Run every (network, strategy) pair and tabulate R and runtime.
    Bench(BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Edgelist,
    Gml,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,

    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyName {
    Deg,
    Betw,
    Abet,
    Pr,
    Ci2,
    Ci3,
}

#[derive(Args, Debug)]
pub struct AttackArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum)]
    pub strategy: StrategyName,

    /// Re-rank the residual network during the attack.
    #[arg(long)]
    pub interactive: bool,

    /// Pivots per ranking for `abet`; defaults to max(8, ceil(log2 N)).
    #[arg(long)]
    pub pivots: Option<usize>,

    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,

    /// Removals between re-rankings in interactive mode.
    #[arg(long, default_value_t = 1)]
    pub batch: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// JSON result record; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Also write the per-Q curve as `Q,gcs` lines.
    #[arg(long)]
    pub curve_csv: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum YMode {
    Scaled,
    PaperLiteral,
}

#[derive(Args, Debug)]
pub struct QreArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Sub-intervals per stage.
    #[arg(long, default_value_t = 100)]
    pub x: usize,

    /// Pivots per sub-interval; derived from --y-mode when omitted.
    #[arg(long)]
    pub y: Option<usize>,

    /// Refinement iterations; derived from --y-mode when omitted.
    #[arg(long)]
    pub z: Option<usize>,

    #[arg(long, value_enum, default_value_t = YMode::Scaled)]
    pub y_mode: YMode,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long)]
    pub curve_csv: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Ba,
    Er,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,

    #[arg(long)]
    pub n: usize,

    /// Edges per new node (ba).
    #[arg(long)]
    pub m: Option<usize>,

    /// Edge probability (er).
    #[arg(long)]
    pub p: Option<f64>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Network files; format is inferred from each extension unless --format is set.
    #[arg(long = "input", required = true, num_args = 1..)]
    pub inputs: Vec<PathBuf>,

    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,

    /// Comma-separated strategies: deg, betw, abet, pr, ci2, ci3 (prefix `i` for
    /// interactive) and qre.
    #[arg(long, required = true, value_delimiter = ',')]
    pub strategies: Vec<bench::BenchStrategy>,

    #[arg(long, default_value_t = 1)]
    pub repeats: usize,

    /// Wall-clock limit per run.
    #[arg(long)]
    pub timeout_s: Option<f64>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// CSV table; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Also write the completed cells as a JSON array of result records.
    #[arg(long)]
    pub records: Option<PathBuf>,
}

/// Bad flag combinations detected after parsing; reported like clap's own errors.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Attack(args) => commands::attack(&args),
        Command::Qre(args) => commands::qre(&args),
        Command::Gen(args) => commands::gen(&args),
        Command::Bench(args) => bench::run(&args, cli.threads),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 {
        Cli::command()
            .error(
                clap::error::ErrorKind::InvalidValue,
                "--threads must be at least 1",
            )
            .exit();
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => match e.downcast_ref::<UsageError>() {
            Some(usage) => Cli::command()
                .error(clap::error::ErrorKind::ValueValidation, usage)
                .exit(),
            None => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
    }
}
