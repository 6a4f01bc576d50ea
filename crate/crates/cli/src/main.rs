//! `permblock`: verification suites, block assembly, configuration census,
//! evolution and four-dimensional chain reduction.

mod commands;
mod report;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use permblock_core::{BrickFile, Error};
use report::Format;

#[derive(Debug, Parser)]
#[command(name = "permblock", version, about = "Cubic blocks of permutation-type operators over finite fields")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest total thick dimension to assemble.
    #[arg(long, global = true, default_value_t = permblock_core::lattice::DEFAULT_DIM_CAP, value_parser = clap::value_parser!(usize))]
    pub cap_dim: usize,
    /// Largest number of points the brute-force oracle may enumerate.
    #[arg(long, global = true, default_value_t = 1 << 22)]
    pub cap_points: u128,
    /// Leave the timestamp out so reports are byte-reproducible.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run decomposition verification suites.
    Verify(VerifyArgs),
    /// Assemble the block of a brick over a lattice.
    Assemble(commands::AssembleArgs),
    /// Count permitted configurations under boundary conditions.
    Census(commands::CensusArgs),
    /// Iterate block making and compare summand counts with predictions.
    Evolve(commands::EvolveArgs),
    /// Reduce a 4x4 brick along a chain of length l.
    Reduce4d(commands::Reduce4dArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: verify::Suite,
    /// Primes for the scalar-structure suite.
    #[arg(long = "p", value_delimiter = ',', default_values_t = [2u64, 3, 5, 7])]
    primes: Vec<u64>,
    /// Add p = 11 to the scalar-structure suite (slow).
    #[arg(long)]
    include_p11: bool,
    #[arg(long, default_value_t = permblock_core::identity::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = verify::ModeArg::Auto)]
    mode: verify::ModeArg,
    /// Also verify this brick (single suites only).
    #[arg(long)]
    brick: Option<PathBuf>,
    /// Random instances per randomized check.
    #[arg(long, default_value_t = 10)]
    instances: usize,
}

/// Failure of a command: exit 1 for a falsified claim, 2 for bad input or a
/// resource guard.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            // an internal cross-check disagreed: a claim did not hold
            CliError::Core(Error::Invariant(_)) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e @ Error::Resource { cap, .. }) => {
                let flag = match *cap {
                    "points" => " (raise with --cap-points)",
                    "dimension" => " (raise with --cap-dim)",
                    _ => "",
                };
                write!(f, "{e}{flag}")
            }
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

pub fn read_brick(path: &Path) -> Result<BrickFile, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    permblock_core::parse_brick(&text)
}

/// A finished command: its result and whether every claim held.
pub struct Outcome {
    pub result: serde_json::Value,
    pub falsified: bool,
}

fn run_verify(args: VerifyArgs, g: &GlobalOpts) -> Result<Outcome, CliError> {
    if args.brick.is_some() && args.suite == verify::Suite::All {
        return Err(Error::input("--brick needs a single suite").into());
    }
    if args.trials == 0 {
        return Err(Error::input("--trials must be positive").into());
    }
    let mut primes = args.primes;
    if args.include_p11 && !primes.contains(&11) {
        primes.push(11);
    }
    let cfg = verify::VerifyConfig {
        suite: args.suite,
        primes,
        trials: args.trials,
        mode: args.mode,
        brick: args.brick,
        instances: args.instances,
        seed: g.seed,
        cap_dim: g.cap_dim,
    };
    let checks = verify::run(&cfg)?;
    let falsified = checks.iter().any(|c| c.outcome.is_falsified());
    let degenerate: Vec<&str> = checks.iter().filter(|c| c.outcome.is_degenerate()).map(|c| c.check.as_str()).collect();
    let result = serde_json::json!({
        "suite": clap::ValueEnum::to_possible_value(&cfg.suite).map(|v| v.get_name().to_string()),
        "trials": cfg.trials,
        "checks": checks,
        "degenerate": degenerate,
    });
    Ok(Outcome { result, falsified })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global.clone();
    if g.cap_dim == 0 || g.cap_points == 0 {
        eprintln!("error: caps must be positive");
        return ExitCode::from(2);
    }
    let (name, outcome) = match cli.command {
        Command::Verify(a) => ("verify", run_verify(a, &g)),
        Command::Assemble(a) => ("assemble", commands::assemble(a, &g)),
        Command::Census(a) => ("census", commands::census(a, &g)),
        Command::Evolve(a) => ("evolve", commands::evolve(a, &g)),
        Command::Reduce4d(a) => ("reduce4d", commands::reduce4d(a, &g)),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let status = if outcome.falsified { "falsified" } else { "verified" };
    let report = report::envelope(name, g.seed, !g.no_timestamp, status, outcome.result);
    if let Err(e) = report::emit(&report::render(&report, g.format), g.out.as_deref()) {
        eprintln!("error: {}", CliError::Io(e.to_string()));
        return ExitCode::from(2);
    }
    if let Some(path) = &g.out {
        eprintln!("{name}: {status}, report written to {}", path.display());
    }
    ExitCode::from(outcome.falsified as u8)
}
