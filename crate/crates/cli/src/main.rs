//! `emc-cli`: earth mover's coefficients, EMC/D distribution tables,
//! generating functions and `sl_d` weight diagrams from the command line.
//!
//! Exit status is 0 on success, 1 for usage or input errors, 2 when a size
//! guard refuses the instance and 3 when `selftest` finds a disagreement.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use emc_core::Error;

#[derive(Parser, Debug)]
#[command(name = "emc-cli", version, about = "Earth mover's coefficient toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// EMC of a tuple of compositions
    Emc(EmcArgs),
    /// Exhaustive table of tuple counts by weighted difference and EMC
    Distribution(DistributionArgs),
    /// Coefficients of the generating function H_{n,m}(q, x, y, t)
    Genfun(GenfunArgs),
    /// sl_d character of (Sym^s C^n)^{(x) d} as a weight table
    Character(CharacterArgs),
    /// Signed sl_3 highest-weight multiplicities of the character
    Decompose(DecomposeArgs),
    /// Exact proportion of pairs in C(s,n)^2 with EMC = |D|
    Proportion(ShapeArgs),
    /// List C(s,n) in lexicographic order with their diagrams
    Enumerate(EnumerateArgs),
    /// Word, diagram, corners and weighted total of one composition
    Inspect(InspectArgs),
    /// Transport cost of a single position vector
    Cost(CostArgs),
    /// Canonical weighted difference of a vector of weighted totals
    Dvalue(DvalueArgs),
    /// Cross-check the EMC algorithms on random tuples
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct InspectArgs {
    /// Comma-separated entries, e.g. "3,2,0,3,1"
    #[arg(long)]
    composition: String,
}

#[derive(Args, Debug)]
struct CostArgs {
    /// Comma-separated bin positions, e.g. "7,4,5,4,1"
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    x: Vec<usize>,
}

#[derive(Args, Debug)]
struct DvalueArgs {
    /// Comma-separated weighted totals, e.g. "5,2,1,3"
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
    totals: Vec<i64>,
}

#[derive(Args, Debug)]
struct EmcArgs {
    /// Compositions separated by ';', entries by ',', e.g. "1,0,2;0,3,0"
    #[arg(long)]
    tuple: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Symdiff)]
    method: MethodArg,
    /// Print the per-column costs (rsk) or the cell grid (symdiff) first
    #[arg(long)]
    explain: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Rsk,
    Symdiff,
    Transport,
    Prefix,
}

#[derive(Args, Debug)]
struct ShapeArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Maximum number of tuples to visit
    #[arg(long, default_value_t = emc_core::par::DEFAULT_BUDGET)]
    budget: u128,
    /// Enumerate on the calling thread only
    #[arg(long)]
    sequential: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct DistributionArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Read the d = 2 table off the generating function instead of enumerating
    #[arg(long)]
    genfun: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct GenfunArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 4)]
    tmax: usize,
    /// Print only the coefficient of t^S
    #[arg(long, value_name = "S")]
    coeff_of_t: Option<usize>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args, Debug)]
struct CharacterArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Add plane coordinates px,py (d = 3 only)
    #[arg(long)]
    cartesian: bool,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[arg(long)]
    cartesian: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = emc_core::par::DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
}

/// Failure modes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Guard(Error),
    Input(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::InstanceTooLarge { .. } | Error::Overflow { .. } => {
                Failure::Guard(e)
            }
            other => Failure::Input(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("write failed: {e}"))
    }
}

fn report(kind: &str, message: &str, code: u8) -> ExitCode {
    let line = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{line}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = commands::run(cli.command, &mut out).and_then(|()| Ok(out.flush()?));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => report("usage", &m, 1),
        Err(Failure::Input(e)) => report("input", &e.to_string(), 1),
        Err(Failure::Guard(e)) => report("guard", &e.to_string(), 2),
        Err(Failure::Check(m)) => report("check", &m, 3),
    }
}
