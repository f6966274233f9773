use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use defram::known::Scope;
use defram::{GraphClass, RunLimits};

mod commands;
mod report;

#[derive(Parser, Debug)]
#[command(
    name = "defram",
    version,
    about = "Defective Ramsey numbers and defective cocolorings"
)]
struct Cli {
    /// Log progress per level to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute R_k^G(i,j) and its extremal graphs.
    Ramsey(RamseyArgs),
    /// Compute or bound c_k^G(m).
    Cocolor(CocolorArgs),
    /// Check every graph in a graph6 file against a parameter set.
    Verify(VerifyArgs),
    /// Recompute reference table entries and compare.
    Tables(TablesArgs),
    /// Print canonical graph6 forms of the input graphs.
    Canon(CanonArgs),
    /// Print the triangle chain of order 2j-3 in graph6.
    Chain {
        #[arg(short)]
        j: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RunOpts {
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    pub threads: Option<usize>,

    /// Memory cap for one level, e.g. 512MiB or 4GiB.
    #[arg(long, default_value = "4GiB", value_parser = parse_bytes)]
    pub mem_cap: u64,

    /// Wall-clock limit, e.g. 90s, 30m, 2h.
    #[arg(long, default_value = "1h", value_parser = humantime::parse_duration)]
    pub time_limit: Duration,

    /// Directory for level checkpoints.
    #[arg(long, env = "RAMSEY_CHECKPOINT_DIR")]
    pub checkpoint: Option<PathBuf>,

    /// Write the resulting graphs as graph6 lines.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Write a key=value summary.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

impl RunOpts {
    pub fn limits(&self) -> RunLimits {
        RunLimits {
            threads: self.threads,
            time_limit: Some(self.time_limit),
            mem_cap: Some(usize::try_from(self.mem_cap).unwrap_or(usize::MAX)),
        }
    }
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    s.parse::<bytesize::ByteSize>().map(|b| b.as_u64())
}

fn parse_class(s: &str) -> Result<GraphClass, String> {
    s.parse::<GraphClass>().map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct RamseyArgs {
    #[arg(long, value_parser = parse_class)]
    pub class: GraphClass,
    #[arg(short)]
    pub k: usize,
    #[arg(short)]
    pub i: usize,
    #[arg(short)]
    pub j: usize,
    /// Start from the graphs in this file instead of K_1.
    #[arg(long)]
    pub seed: Option<PathBuf>,
    /// Continue from this run's checkpoint file if present.
    #[arg(long)]
    pub resume: bool,
    /// Stop once this order is generated.
    #[arg(long)]
    pub stop_order: Option<usize>,
    #[command(flatten)]
    pub run: RunOpts,
}

#[derive(Args, Debug)]
pub struct CocolorArgs {
    #[arg(long, value_parser = parse_class)]
    pub class: GraphClass,
    #[arg(short)]
    pub k: usize,
    #[arg(short)]
    pub m: usize,
    /// Print the straight lower and upper bounds only.
    #[arg(long)]
    pub upper_bound: bool,
    /// Only test graphs of this order.
    #[arg(long)]
    pub order: Option<usize>,
    /// Value of c_k(m-1); computed when omitted.
    #[arg(long)]
    pub prev: Option<usize>,
    /// With --order: generate only graphs containing a member of this file.
    #[arg(long, conflicts_with = "candidates", requires = "order")]
    pub seed: Option<PathBuf>,
    /// With --order: test exactly the graphs in this file.
    #[arg(long, requires = "order")]
    pub candidates: Option<PathBuf>,
    /// Generate every witness even where a single construction settles the value.
    #[arg(long)]
    pub all_witnesses: bool,
    #[command(flatten)]
    pub run: RunOpts,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// graph6 file, or - for stdin.
    pub path: PathBuf,
    #[arg(long, value_parser = parse_class)]
    pub class: GraphClass,
    #[arg(short)]
    pub k: usize,
    #[arg(short, requires = "j", conflicts_with = "m")]
    pub i: Option<usize>,
    #[arg(short, requires = "i")]
    pub j: Option<usize>,
    /// Require graphs with no k-defective m-cocoloring.
    #[arg(short)]
    pub m: Option<usize>,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long, default_value = "small", value_parser = |s: &str| s.parse::<Scope>())]
    pub scope: Scope,
    /// Only entries of this class.
    #[arg(long, value_parser = parse_class)]
    pub class: Option<GraphClass>,
    /// Only entries with this k.
    #[arg(short)]
    pub k: Option<usize>,
    /// Per-entry run settings.
    #[command(flatten)]
    pub run: RunOpts,
}

#[derive(Args, Debug)]
pub struct CanonArgs {
    /// graph6 file, or - for stdin.
    #[arg(default_value = "-")]
    pub path: PathBuf,
    /// Drop repeated isomorphism classes and sort the output.
    #[arg(long)]
    pub dedup: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let result = match cli.command {
        Command::Ramsey(a) => commands::ramsey(&a),
        Command::Cocolor(a) => commands::cocolor(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Tables(a) => commands::tables(&a),
        Command::Canon(a) => commands::canon(&a),
        Command::Chain { j } => commands::chain(j),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(msg) = f.message() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(f.exit_code())
        }
    }
}
