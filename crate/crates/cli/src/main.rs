mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lscrystal_core::{Error, Family};

#[derive(Parser, Debug)]
#[command(name = "lscrystal", version, about = "Level-zero path crystals, energies and one-dimensional sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build B(λ)_cl or B_i, check simplicity, print the graph.
    Crystal(Common),
    /// Print Deg on B(λ)_cl (with --weights) or H, D and Deg∘Ψ⁻¹ on B_i (with --seq).
    Energy(Common),
    /// Print the one-dimensional sums X(B_i, μ; q).
    Onedsum(Common),
    /// Kostka-Foulkes polynomials from paths, checked against charge (type A).
    Kostka(Common),
    /// Run the identity suite for one sequence i.
    Verify(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Affine type: A, C or D.
    #[arg(long = "type", value_name = "FAMILY")]
    pub family: Family,

    /// ℓ for A_{ℓ-1}^(1), n for C_n^(1) and D_n^(1).
    #[arg(long)]
    pub rank: usize,

    /// Multiplicities of λ over I_0, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "seq")]
    pub weights: Option<Vec<u32>>,

    /// Index sequence i, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub seq: Option<Vec<usize>>,

    /// Target weight μ as multiplicities of the classical fundamental weights.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mu: Option<Vec<i64>>,

    /// Machine-readable JSON output.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,

    /// CSV output for tables.
    #[arg(long)]
    pub csv: bool,

    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,

    /// Maximum number of elements in any crystal.
    #[arg(long)]
    pub cap: Option<usize>,

    /// verify: compare against a golden file, byte for byte.
    #[arg(long, value_name = "FILE")]
    pub golden: Option<std::path::PathBuf>,

    /// verify: print the golden document instead of the report.
    #[arg(long, conflicts_with = "golden")]
    pub emit_golden: bool,
}

/// Failure of a subcommand, mapped to the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::OrbitTooLarge { .. } => Failure::Cap(e.to_string()),
            Error::GraphCorrupt(_) | Error::NotIsomorphic(_) | Error::Conflict(_) | Error::InvalidDatum(_) => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::Crystal(c) => ("crystal", c),
        Command::Energy(c) => ("energy", c),
        Command::Onedsum(c) => ("onedsum", c),
        Command::Kostka(c) => ("kostka", c),
        Command::Verify(c) => ("verify", c),
    };
    if let Some(jobs) = common.jobs {
        if jobs == 0 {
            eprintln!("lscrystal {name}: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("lscrystal {name}: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Crystal(c) => commands::crystal(c),
        Command::Energy(c) => commands::energy(c),
        Command::Onedsum(c) => commands::onedsum(c),
        Command::Kostka(c) => commands::kostka(c),
        Command::Verify(c) => commands::verify(c),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, failure)) => {
            print!("{out}");
            eprintln!("lscrystal {name}: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
