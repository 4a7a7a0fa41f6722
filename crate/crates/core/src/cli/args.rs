use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::models::Family;

#[derive(Debug, Parser)]
#[command(
    name = "ptnorm",
    version,
    about = "Pseudo-norms, Gram matrices and PT-symmetric time evolution for three solvable potentials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Normalize states to their quasi-parity: analytic and quadrature |N|.
    Norm(Flags),
    /// Pseudo-inner-product matrix of normalized states.
    Gram(Flags),
    /// Crank-Nicolson evolution with conservation and continuity checks.
    Evolve(Flags),
    /// Contour-shift invariance and fitted PT phase.
    Check(Flags),
}

impl CommandArgs {
    pub fn split(self) -> (CommandKind, Flags) {
        match self {
            CommandArgs::Norm(f) => (CommandKind::Norm, f),
            CommandArgs::Gram(f) => (CommandKind::Gram, f),
            CommandArgs::Evolve(f) => (CommandKind::Evolve, f),
            CommandArgs::Check(f) => (CommandKind::Check, f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Norm,
    Gram,
    Evolve,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Flags shared by every command. Unset flags fall back to the config
/// file, then to built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Potential family: oscillator, gpt or scarf.
    #[arg(long)]
    pub model: Option<Family>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Imaginary shift of the oscillator.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long = "A", allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Imaginary shift of the generalized Pöschl-Teller potential.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Quasi-parity, +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated labels `q:n` or ranges `q:n1..n2`, e.g. `+1:0..2,-1:0`.
    #[arg(long, allow_hyphen_values = true)]
    pub labels: Option<String>,
    /// Superposition coefficients matching `--labels`, e.g. `1,0.5-0.2i`.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Absolute quadrature tolerance.
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Output file (directory for `evolve`); stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long, allow_negative_numbers = true)]
    pub grid_half_width: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Write a snapshot every this many steps.
    #[arg(long)]
    pub snapshot_every: Option<usize>,
    /// Worker threads for parallel sections.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Flat TOML file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Skip closed forms; allowed outside the normalization window.
    #[arg(long)]
    pub numeric_only: bool,
    /// Second oscillator shift for the contour check.
    #[arg(long, allow_negative_numbers = true)]
    pub c2: Option<f64>,
}
