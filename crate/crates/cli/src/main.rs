mod commands;
mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plovkit_core::error::Error;

/// Exact checks for restricted-partition incidence matrices and for the
/// volume growth of zero-entropy automorphisms of E^d.
#[derive(Debug, Parser)]
#[command(name = "plovkit", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for sampled checks and random instances.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Worker threads (0 picks the number of cores).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,

    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,

    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timing: bool,

    /// Refuse sweeps with dk above this ceiling.
    #[arg(long, default_value_t = 40, global = true)]
    pub max_dk: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Restricted partitions of n into at most d parts of size at most k.
    Partition {
        #[command(subcommand)]
        action: PartitionAction,
    },
    /// The weighted incidence matrix A_{k,d,n}.
    Matrix(Kdn),
    /// Rank of A_{k,d,n}, or the full rank table when --n is omitted.
    Rank(KdOptN),
    /// Hard Lefschetz checks.
    Lefschetz {
        #[command(subcommand)]
        action: LefschetzAction,
    },
    /// Polynomial volume growth of an automorphism.
    Plov(ModelArgs),
    /// Degree sequences deg_i(f^n) as polynomials in n.
    Degrees(DegreesArgs),
    /// Every growth bound instantiated on one automorphism.
    Bounds(BoundsArgs),
    /// The full verification suite.
    VerifyAll(VerifyAllArgs),
}

#[derive(Debug, Subcommand)]
pub enum PartitionAction {
    /// List P(k,d,n) in canonical order.
    List(Kdn),
    /// p(k,d,n), or the whole sequence when --n is omitted.
    Count(KdOptN),
}

#[derive(Debug, Subcommand)]
pub enum LefschetzAction {
    /// Check window products, ranks, sl2 brackets and unimodality for (k,d).
    Verify(KdOptN),
}

#[derive(Debug, Args)]
pub struct Kdn {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct KdOptN {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Jordan model J_{1,r0} + J_{1,d0}^m0 given as r0,d0,m0.
    #[arg(long, value_name = "r0,d0,m0", conflicts_with = "matrix", required_unless_present = "matrix")]
    pub jordan: Option<String>,

    /// JSON file {"d": .., "A": [[..]], "H": optional [[..]]}.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DegreesArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Only this degree index.
    #[arg(long)]
    pub i: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Ample tuples per weak-positivity check.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct VerifyAllArgs {
    /// Ample tuples per weak-positivity check.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,

    /// Largest dk for the rank, window and unimodality sweeps.
    #[arg(long, default_value_t = 24)]
    pub sweep_max: u32,

    /// Largest dk for the sl2 checks.
    #[arg(long, default_value_t = 16)]
    pub sl2_max: u32,

    /// Largest dk for the symmetric-function checks.
    #[arg(long, default_value_t = 12)]
    pub symfun_max: u32,

    /// Random conjugates per dimension.
    #[arg(long, default_value_t = 100)]
    pub conjugates: usize,
}

/// Failure classes mapped to process exit codes.
#[derive(Debug)]
pub enum Failure {
    Check,
    Invalid(String),
    Entropy(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check => 1,
            Failure::Invalid(_) => 2,
            Failure::Entropy(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PositiveEntropy(_) => Failure::Entropy(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = commands::run(&cli).and_then(|out| {
        let text = render::format(&out, cli.global.format);
        emit(&text, cli.global.out.as_ref())?;
        if out.report.passed() {
            Ok(())
        } else {
            Err(Failure::Check)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Check => eprintln!("one or more checks failed"),
                Failure::Invalid(m) | Failure::Entropy(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}
