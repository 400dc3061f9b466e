//! `hexknot`: sample, classify and count knotted random equilateral hexagons.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Debug, Parser)]
#[command(
    name = "hexknot",
    version,
    about = "Random equilateral hexagons and their knot types"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Predicate,
    Oracle,
}

impl From<ModeArg> for hexknot::Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Predicate => hexknot::Mode::Predicate,
            ModeArg::Oracle => hexknot::Mode::Oracle,
        }
    }
}

#[derive(Debug, Args)]
struct SeedArg {
    /// Base random seed.
    #[arg(long, env = "HEXKNOT_SEED", default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw uniform action-angle coordinates.
    Sample {
        /// Number of samples.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the 18-column vertex CSV of each hexagon.
        #[arg(long)]
        vertex_output: Option<PathBuf>,
    },
    /// Append the knot class to rows of a 6-column action-angle or 18-column vertex CSV.
    Classify {
        /// Input CSV; `-` reads stdin.
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the knotting probability.
    Estimate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Predicate)]
        mode: ModeArg,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
        /// Independent runs with seeds seed, seed+1, ...
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        repeats: u32,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Leave out wall-clock time so reruns are byte-identical.
        #[arg(long)]
        omit_timing: bool,
    },
    /// Compare Monte Carlo volumes with their closed forms.
    Volumes {
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print the analytic knotting bound, optionally against an estimate report.
    Bound {
        /// JSON report written by `estimate`.
        #[arg(long)]
        with_estimate: Option<PathBuf>,
    },
    /// Classify one action-angle tuple and evaluate the trefoil conditions.
    Check {
        /// d1 d2 d3 theta1 theta2 theta3
        #[arg(num_args = 6, value_name = "COORD", allow_negative_numbers = true, required = true)]
        coords: Vec<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
