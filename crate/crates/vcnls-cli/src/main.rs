//! `vcnls` — configuration-driven verification runs for the equation's
//! symmetry algebra, exact solution families, blow-up scaling laws,
//! concentration limits, and time stepping.
//!
//! Each subcommand reads one JSON config, writes `results.json` /
//! `results.txt` (and CSV tables where applicable) into the output
//! directory, and exits 0 when all checks pass, 1 on a failed check, 2 on
//! configuration or usage errors, and 3 on a numerical halt.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vcnls_cli::{commands, config, Failure};

#[derive(Parser)]
#[command(name = "vcnls", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the symmetry-algebra commutator table exactly
    LieCheck {
        /// Optional JSON configuration (the check has no tunable inputs)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for reports (created if missing)
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Measure the PDE residual of a configured solution under refinement
    VerifySolution(RunArgs),
    /// Tabulate norms over an ε ladder and fit the blow-up rates
    BlowupScan(RunArgs),
    /// Pair the concentrating density against a bump and track its limit
    DistributionTest(RunArgs),
    /// Time-step an initial field and compare against an exact reference
    Simulate(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON configuration for this subcommand
    #[arg(long)]
    config: PathBuf,
    /// Directory for reports and CSV output (created if missing)
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::LieCheck { config, out } => {
            if let Some(path) = config {
                let _: config::LieCheckConfig = config::load(&path)?;
            }
            commands::lie_check::run(&out)
        }
        Command::VerifySolution(args) => {
            commands::verify_solution::run(&config::load(&args.config)?, &args.out)
        }
        Command::BlowupScan(args) => {
            commands::blowup_scan::run(&config::load(&args.config)?, &args.out)
        }
        Command::DistributionTest(args) => {
            commands::distribution_test::run(&config::load(&args.config)?, &args.out)
        }
        Command::Simulate(args) => commands::simulate::run(&config::load(&args.config)?, &args.out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
