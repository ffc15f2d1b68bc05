// SPDX-License-Identifier: MIT

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use frwt_cli::commands::{self, Engine};
use frwt_cli::config::RunConfig;
use frwt_cli::{io, CliError, Result};
use frwt_core::fixtures::Fixture;

/// Fractional Fourier and fractional wavelet transforms.
#[derive(Debug, Parser)]
#[command(name = "frwt", version)]
struct Cli {
    /// key = value run configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Fractional Fourier transform of a signal file
    Frft {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "fast")]
        engine: Engine,
        /// Output grid for the direct engine, `start:step:count[,...]`
        #[arg(long)]
        out_grid: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Admissibility constant of the configured wavelet and order
    Admissibility {
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
    /// Continuous fractional wavelet transform to a coefficient file
    Cfrwt {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Reconstruction from a coefficient file
    Synth {
        input: PathBuf,
        /// Synthesis wavelet (defaults to the analysis wavelet)
        #[arg(long)]
        phi: Option<String>,
        /// Signal to compare the reconstruction with
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Uncertainty product and Morrey norm of a signal
    Measure { input: PathBuf },
    /// Writes a built-in test signal
    Fixture {
        #[arg(value_enum)]
        kind: FixtureKind,
        /// `start:step:count[,...]`
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
        freq: f64,
        #[arg(long, default_value_t = 1.0)]
        half_width: f64,
        #[arg(long, default_value_t = 0)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Runs a verification suite and prints one JSON record per check
    Verify { suite: String },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum FixtureKind {
    Gaussian,
    Packet,
    Indicator,
    Hermite,
    Random,
}

fn run(cli: Cli) -> Result<()> {
    let cfg = RunConfig::load_or_default(cli.config.as_deref())?;
    if let Some(n) = cfg.thread_count()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Parse(format!("thread pool: {e}")))?;
    }
    let mut out = std::io::stdout().lock();
    match cli.cmd {
        Cmd::Frft { input, alpha, engine, out_grid, output } => {
            let g = out_grid.as_deref().map(io::parse_grid).transpose()?;
            commands::frft(&input, alpha, engine, g.as_ref(), &output, &mut out)
        }
        Cmd::Admissibility { dim } => commands::admissibility(&cfg, dim, &mut out),
        Cmd::Cfrwt { input, output } => commands::cfrwt(&input, &cfg, &output, &mut out),
        Cmd::Synth { input, phi, reference, output } => {
            commands::synth(&input, &cfg, phi.as_deref(), reference.as_deref(), &output, &mut out)
        }
        Cmd::Measure { input } => commands::measure(&input, &cfg, &mut out),
        Cmd::Fixture { kind, grid, sigma, freq, half_width, order, seed, output } => {
            let grid = io::parse_grid(&grid)?;
            let n = grid.dim();
            let fx = match kind {
                FixtureKind::Gaussian => Fixture::gaussian(sigma),
                FixtureKind::Packet => Fixture::Packet { sigma, freq: vec![freq; n] },
                FixtureKind::Indicator => Fixture::Indicator { half_width },
                FixtureKind::Hermite => Fixture::Hermite { order, center: vec![] },
                FixtureKind::Random => Fixture::Random { seed, atoms: 3, spread: 2.0 },
            };
            commands::fixture(&fx, &grid, &output)
        }
        Cmd::Verify { suite } => commands::verify(&suite, &cfg, &mut out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("frwt: {e}");
            for line in e.details() {
                eprintln!("{line}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
