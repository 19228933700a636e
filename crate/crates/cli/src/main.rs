mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Linear codes under poset metrics: decompositions, decoding complexity,
/// hierarchical bounds and property suites.
#[derive(Parser, Debug)]
#[command(name = "posetcode", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Isometry group elements scanned per search
    #[arg(
        long,
        env = "POSETCODE_GROUP_BUDGET",
        default_value_t = 10_000_000,
        global = true
    )]
    group_budget: u128,

    /// Distinct codes kept per orbit
    #[arg(
        long,
        env = "POSETCODE_ORBIT_BUDGET",
        default_value_t = 100_000,
        global = true
    )]
    orbit_budget: usize,

    /// Entries per component syndrome table
    #[arg(long, env = "POSETCODE_COSET_BUDGET", default_value_t = 1 << 20, global = true)]
    coset_budget: u128,

    /// Seed for sampled checks
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect and compare posets
    #[command(subcommand)]
    Poset(PosetCommand),
    /// Weights, distances and decompositions of a code
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Syndrome-decode a received word over a primary decomposition
    Decode(DecodeArgs),
    /// Run a property suite
    #[command(subcommand)]
    Verify(VerifyCommand),
}

/// A poset given as a JSON file or a family such as `chain:4`,
/// `antichain:4` or `hierarchical:2,2`.
#[derive(Args, Debug)]
pub struct PosetSource {
    /// Poset JSON file or family spec
    poset: Option<String>,
    /// Family spec (`chain:N`, `antichain:N`, `hierarchical:T1,T2,..`)
    #[arg(long, conflicts_with = "poset")]
    family: Option<String>,
}

#[derive(Subcommand, Debug)]
enum PosetCommand {
    /// Levels, heights, type and hierarchy levels
    Info(PosetSource),
    /// The hierarchical neighbours P⁺ and P⁻
    Neighbours(PosetSource),
    /// Hasse diagram in DOT
    Dot(PosetSource),
    /// Whether either poset is finer than the other
    Compare { a: String, b: String },
}

#[derive(Args, Debug)]
pub struct PosetCode {
    /// Poset JSON file or family spec
    poset: String,
    /// Code JSON file
    code: PathBuf,
}

#[derive(Subcommand, Debug)]
enum AnalyzeCommand {
    /// P-weight distribution of the code, or the weight of one vector
    Weight {
        #[command(flatten)]
        input: PosetCode,
        /// A vector such as `1,0,1`
        #[arg(long)]
        x: Option<String>,
    },
    /// Minimum P-distance
    Mindist(PosetCode),
    /// Maximal decomposition, or a primary P-decomposition with `--primary`
    Decompose {
        #[command(flatten)]
        input: PosetCode,
        #[arg(long)]
        primary: bool,
    },
    /// O over P⁺, P and P⁻
    Bounds(PosetCode),
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    #[command(flatten)]
    input: PosetCode,
    /// Received word, comma-separated residues
    #[arg(long, required_unless_present = "stats_only")]
    y: Option<String>,
    /// Print table statistics only
    #[arg(long)]
    stats_only: bool,
    /// Table cache: loaded when present, written after building otherwise
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SuiteArgs {
    /// Largest ground set
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Field size
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Random instances
    #[arg(long, default_value_t = 50)]
    samples: usize,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Metric axioms and the antichain/chain special cases
    Metric(SuiteArgs),
    /// Closed-form refinement against search over 1-step moves
    Partition {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Profile uniqueness of maximal P-decompositions
    Profile(SuiteArgs),
    /// Complexity never increases from P to a coarser Q
    Monotone(SuiteArgs),
    /// Complexity sandwich and extremality of the hierarchical neighbours
    Bounds(SuiteArgs),
    /// A code separating P < Q
    RefinementWitness {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 2)]
        field: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(dump) = e.dump() {
                println!("{dump}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
