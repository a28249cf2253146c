//! Command-line front end for the two-mode Josephson junction toolkit.
//!
//! Five subcommands cover the library surface: `ground` (one ground state
//! with envelope and potential), `sweep` (transition diagnostics over a
//! λ range), `wigner` (phase-space grid), `thermal` (crossover and escape
//! rates), `units` (laboratory parameters → model units).  Exit codes:
//! 0 success, 2 invalid configuration, 3 numerical or I/O failure.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{FileConfig, Format};
use error::{CliError, CliResult};
use output::Sink;

/// Ground states, phase-transition sweeps, Wigner grids, and escape-rate
/// tables for a two-mode bosonic Josephson junction.
#[derive(Debug, Parser)]
#[command(name = "bjj", version, about)]
struct Cli {
    /// JSON config file whose keys mirror the flags; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory, created if missing.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Data file format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Significant digits for CSV floats (1–17; default round-trip exact).
    #[arg(long, global = true, value_name = "DIGITS")]
    precision: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one ground state; export amplitudes, envelope, and potential.
    Ground(GroundArgs),
    /// Sweep λ and export per-point transition diagnostics.
    Sweep(SweepArgs),
    /// Export a Wigner phase-space grid for one ground-state envelope.
    Wigner(WignerArgs),
    /// Export crossover temperatures and escape rates over (λ, T).
    Thermal(ThermalArgs),
    /// Convert laboratory parameters into model units.
    Units(UnitsArgs),
}

#[derive(Debug, Args)]
struct GroundArgs {
    /// Particle count N.
    #[arg(long)]
    n: Option<usize>,
    /// Interaction-to-coupling ratio λ.
    #[arg(long)]
    lambda: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Particle count N.
    #[arg(long)]
    n: Option<usize>,
    /// λ grid as an inclusive a:b:step range.
    #[arg(long, value_name = "A:B:STEP")]
    lambda_range: Option<String>,
}

#[derive(Debug, Args)]
struct WignerArgs {
    /// Particle count N.
    #[arg(long)]
    n: Option<usize>,
    /// Interaction-to-coupling ratio λ (λ = 1 has no envelope).
    #[arg(long)]
    lambda: Option<f64>,
    /// Grid points along x.
    #[arg(long)]
    nx: Option<usize>,
    /// Grid points along p.
    #[arg(long)]
    np: Option<usize>,
    /// Momentum half-extent; defaults to three inverse packet widths.
    #[arg(long)]
    pmax: Option<f64>,
}

#[derive(Debug, Args)]
struct ThermalArgs {
    /// Particle count N.
    #[arg(long)]
    n: Option<usize>,
    /// λ grid as an inclusive a:b:step range.
    #[arg(long, value_name = "A:B:STEP")]
    lambda_range: Option<String>,
    /// Temperature grid in kelvin as an inclusive a:b:step range.
    #[arg(long, value_name = "A:B:STEP")]
    temp_range: Option<String>,
    /// Ohmic damping rate γ in rad/s.
    #[arg(long)]
    gamma: Option<f64>,
    /// Josephson coupling angular frequency ω_R in rad/s.
    #[arg(long)]
    omega_r: Option<f64>,
    /// Metastability threshold interpreting the "≫ 1" conditions.
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Debug, Args)]
struct UnitsArgs {
    /// Particle count N.
    #[arg(long)]
    n: Option<usize>,
    /// Atom mass M in kg.
    #[arg(long)]
    mass: Option<f64>,
    /// s-wave scattering length in m (negative: attractive).
    #[arg(long, allow_hyphen_values = true)]
    asc: Option<f64>,
    /// Transverse trap angular frequency ω_⊥ in rad/s.
    #[arg(long)]
    omega_perp: Option<f64>,
    /// Josephson coupling angular frequency ω_R in rad/s.
    #[arg(long)]
    omega_r: Option<f64>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let file = match &cli.config {
        Some(path) => config::load(path)?,
        None => FileConfig::default(),
    };
    let dir = config::require("out", cli.out.clone().or_else(|| file.out.clone()))?;
    let format = cli.format.or(file.format).unwrap_or(Format::Csv);
    let precision = cli.precision.or(file.precision).unwrap_or(17);
    if !(1..=17).contains(&precision) {
        return Err(CliError::Invalid(format!(
            "precision must lie in 1..=17, got {precision}"
        )));
    }
    let sink = Sink {
        dir,
        format,
        precision,
    };
    match &cli.command {
        Command::Ground(args) => commands::ground(args, &file, &sink),
        Command::Sweep(args) => commands::sweep(args, &file, &sink),
        Command::Wigner(args) => commands::wigner(args, &file, &sink),
        Command::Thermal(args) => commands::thermal(args, &file, &sink),
        Command::Units(args) => commands::units(args, &file, &sink),
    }
}
