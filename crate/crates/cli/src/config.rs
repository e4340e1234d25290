use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "curvatom", version, about = "Hydrogen-like atoms in spaces of constant curvature")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels E_n (Rydberg) with degeneracy and bound-state flag
    Spectrum(SpectrumArgs),
    /// Normalized radial function G_{n,l}(r) sampled on (0, r_max]
    Wavefunction(WavefunctionArgs),
    /// Run the verification suites and emit a report
    Verify(VerifyArgs),
    /// Distance between curved and flat radial functions over a curvature sweep
    Flatlimit(FlatlimitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RMax {
    Auto,
    Value(f64),
}

impl FromStr for RMax {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(RMax::Auto);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => Ok(RMax::Value(v)),
            _ => Err(format!("expected a positive number or `auto`, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Accepts any finite float, including negative curvature.
fn finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("expected a finite number, got `{s}`")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub kappa: f64,
    #[arg(long)]
    pub n_max: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub kappa: f64,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, default_value_t = 200)]
    pub samples: u32,
    #[arg(long, default_value = "auto")]
    pub r_max: RMax,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Trig,
    Nu,
    Polynomials,
    Ladder,
    Duff,
    Normalization,
    Ode,
    Flatlimit,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Restrict curvature-dependent suites to this κ
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    /// Largest principal number (polynomials, ladder) or derivative order (duff)
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Override the pass threshold of numeric suites
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FlatlimitArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[command(flatten)]
    pub output: Output,
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
