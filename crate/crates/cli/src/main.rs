mod commands;
mod params;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hadlab_core::Tolerances;

use crate::params::Family;

/// Construct, verify, classify and invert 6x6 complex Hadamard matrices.
#[derive(Debug, Parser)]
#[command(name = "hadlab", version)]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, env = "HADLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Orthogonality tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_orth: f64,
    /// Entrywise tolerance, also used for `-1` detection.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_entry: f64,
    /// Output format. Defaults to json, except for `witness`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build one family member; missing parameters are drawn at random.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// JSON object such as '{"a":{"phase_turns":0.1},"w":"conjugate"}'.
        #[arg(long)]
        params: Option<String>,
    },
    /// Draw several members with their parameters.
    Sample {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Report the -1 pattern verdict and cancelling structure.
    Classify {
        file: PathBuf,
        /// Cross-check the verdict at all 36 pivots.
        #[arg(long)]
        all_pivots: bool,
    },
    /// Hadamard residual and Haagerup invariants.
    Verify { file: PathBuf },
    /// Search for an equivalence taking A to B.
    Equiv { a: PathBuf, b: PathBuf },
    /// Recover family parameters with an equivalence certificate.
    Recover { file: PathBuf },
    /// Check a polynomial identity in exact arithmetic.
    Witness {
        #[arg(value_enum)]
        identity: Identity,
    },
    /// Mutually unbiased basis tools.
    Mub {
        #[command(subcommand)]
        action: MubAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Identity {
    L62,
    P63,
}

#[derive(Debug, Subcommand)]
enum MubAction {
    /// Audit three bases pairwise.
    Audit { b0: PathBuf, b1: PathBuf, b2: PathBuf },
}

/// Errors split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: I/O, parse, shape or tolerance problems. Exit 2.
    Input(anyhow::Error),
    /// Well-formed input that fails a mathematical check. Exit 1.
    Domain(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(e) | Failure::Domain(e) => write!(f, "{e:#}"),
        }
    }
}

/// What a command produced: the rendered text and whether it counts as a
/// success.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

pub struct RunConfig {
    pub seed: u64,
    pub tol: Tolerances,
    pub format: Format,
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let tol = Tolerances::new(cli.tol_orth, Tolerances::default().eps_unimod, cli.tol_entry)?;
    let default_format = match cli.command {
        Command::Witness { .. } => Format::Text,
        _ => Format::Json,
    };
    let cfg = RunConfig {
        seed: cli.seed,
        tol,
        format: cli.format.unwrap_or(default_format),
    };
    match cli.command {
        Command::Gen { family, params } => commands::gen(&cfg, family, params.as_deref()),
        Command::Sample { family, count } => commands::sample(&cfg, family, count),
        Command::Classify { file, all_pivots } => commands::classify(&cfg, &file, all_pivots),
        Command::Verify { file } => commands::verify(&cfg, &file),
        Command::Equiv { a, b } => commands::equiv(&cfg, &a, &b),
        Command::Recover { file } => commands::recover(&cfg, &file),
        Command::Witness { identity } => commands::witness(&cfg, identity),
        Command::Mub {
            action: MubAction::Audit { b0, b1, b2 },
        } => commands::mub_audit(&cfg, [&b0, &b1, &b2]),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.text, output.as_ref()) {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
