//! Command-line front end: computes cooperative-IFC rate regions, classical
//! outer bounds and their intersection, runs the dirty-paper-coding
//! verifier, and sweeps channel grids, emitting plot-ready CSV/JSON.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_WEAK: u8 = 3;
pub const EXIT_CHECK_FAILED: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ifc", version, about = "Gaussian weak interference channel rate-region tool")]
struct Cli {
    /// Output directory for generated files
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Output format for curve data
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Suppress progress messages
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

/// Cross gains may be given as amplitudes (--a/--b) or squared (--a2/--b2).
#[derive(Debug, Clone, Copy, clap::Args)]
pub struct GainArgs {
    #[arg(long, allow_negative_numbers = true, conflicts_with = "a2")]
    a: Option<f64>,
    #[arg(long)]
    a2: Option<f64>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "b2")]
    b: Option<f64>,
    #[arg(long)]
    b2: Option<f64>,
}

impl GainArgs {
    pub fn gain_a(&self) -> f64 {
        self.a.unwrap_or_else(|| self.a2.unwrap_or(0.0).sqrt())
    }

    pub fn gain_b(&self) -> f64 {
        self.b.unwrap_or_else(|| self.b2.unwrap_or(0.0).sqrt())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep one informed-transmitter capacity region and emit its frontier
    Region {
        /// Which transmitter knows both messages
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        tx: u8,
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        p2: f64,
        #[command(flatten)]
        gains: GainArgs,
        /// Sweep resolution
        #[arg(long, default_value_t = 1024)]
        points: usize,
    },
    /// Emit all comparison curves, corner points and subset relations
    Compare {
        /// JSON config: {"p1", "p2", "a2", "b2", "n_alpha"?, "seed"?}
        config: PathBuf,
    },
    /// Verify one dirty-paper-coding sweep point analytically and by Monte-Carlo
    Simulate {
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        p2: f64,
        #[command(flatten)]
        gains: GainArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
    },
    /// Evaluate corner points and bounds over a channel-parameter grid
    Sweep {
        /// Grid over P1: a single value or start:step:stop
        #[arg(long, default_value = "6")]
        p1: String,
        #[arg(long, default_value = "6")]
        p2: String,
        /// Grid over the gain a (amplitude)
        #[arg(long, default_value = "0", allow_negative_numbers = true)]
        a: String,
        #[arg(long, default_value = "0", allow_negative_numbers = true)]
        b: String,
        #[arg(long, default_value_t = 256)]
        n_alpha: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        out_dir: cli.out,
        format: cli.format,
        quiet: cli.quiet,
    };
    let result = match cli.command {
        Command::Region {
            tx,
            p1,
            p2,
            gains,
            points,
        } => commands::cmd_region(&ctx, tx, p1, p2, &gains, points),
        Command::Compare { config } => commands::cmd_compare(&ctx, &config),
        Command::Simulate {
            p1,
            p2,
            gains,
            alpha,
            samples,
            seed,
            tol,
        } => commands::cmd_simulate(&ctx, p1, p2, &gains, alpha, samples, seed, tol),
        Command::Sweep {
            p1,
            p2,
            a,
            b,
            n_alpha,
        } => commands::cmd_sweep(&ctx, &p1, &p2, &a, &b, n_alpha),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
