use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::ParameterFile;

#[derive(Debug, Parser)]
#[command(
    name = "morse",
    version,
    about = "Morse oscillator bound states and numerical checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form levels, optionally checked against finite differences.
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Samples of one normalized wavefunction.
    #[command(allow_negative_numbers = true)]
    Wavefunction(WavefunctionArgs),
    /// Residual and identity checks with a pass/fail report.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Segment-contour quadrature against the series, over an order sweep.
    #[command(allow_negative_numbers = true)]
    Quadcheck(QuadcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PhysicsArgs {
    /// Well depth (energy). Default 1.
    #[arg(long)]
    pub v0: Option<f64>,
    /// Inverse width (1/length). Default 1.
    #[arg(long)]
    pub a: Option<f64>,
    /// Default 1.
    #[arg(long)]
    pub mass: Option<f64>,
    /// Default 1.
    #[arg(long)]
    pub hbar: Option<f64>,
    /// JSON file with any of the keys v0, a, mass, hbar. Flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl PhysicsArgs {
    pub fn flags(&self) -> ParameterFile {
        ParameterFile {
            v0: self.v0,
            a: self.a,
            mass: self.mass,
            hbar: self.hbar,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Add finite-difference energies, overlaps and node counts.
    #[arg(long)]
    pub verify: bool,
    /// Grid points of the coarse finite-difference grid.
    #[arg(long, default_value_t = 4001, value_parser = clap::value_parser!(u64).range(3..))]
    pub points: u64,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Level index.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Left end of the sample range; defaults to the automatic box.
    #[arg(long)]
    pub x_min: Option<f64>,
    /// Right end of the sample range; defaults to the automatic box.
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u64).range(2..))]
    pub samples: u64,
    /// Emit e^{−ξ/2} ξ^β ₁F₁(−n; 2β+1; ξ) without the normalization constant.
    #[arg(long)]
    pub unnormalized: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Replaces every default tolerance; per-check flags still win.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub kernel_tol: Option<f64>,
    /// Applies to both transformed-equation checks.
    #[arg(long)]
    pub ode_tol: Option<f64>,
    #[arg(long)]
    pub schrodinger_tol: Option<f64>,
    #[arg(long)]
    pub identity_tol: Option<f64>,
    #[arg(long)]
    pub gram_tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct QuadcheckArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
    #[arg(long)]
    pub xi: f64,
    /// Comma-separated quadrature orders.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32,64")]
    pub orders: Vec<usize>,
}
