use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ptspec", version, about = "Spectra of PT-symmetric Schrodinger operators on complex contours")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Contour geometry
    #[command(subcommand)]
    Contour(ContourCommand),
    /// Closed-form and finite-difference spectra
    #[command(subcommand)]
    Spectrum(SpectrumCommand),
    /// -kappa_{n,sigma} against 2L+1 (the level-structure figure)
    #[command(args_override_self = true)]
    Figure3(Figure3Args),
    /// Whether the continuum is bounded from below
    #[command(args_override_self = true)]
    Stability(StabilityArgs),
    /// Benchmark fixtures
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Compact ground-state formula against the enumerated minimum
    #[command(args_override_self = true)]
    GroundState(GroundStateArgs),
}

#[derive(Subcommand, Debug)]
pub enum ContourCommand {
    /// Sample x(s) and x'(s)
    #[command(args_override_self = true)]
    Sample(ContourSampleArgs),
}

#[derive(Subcommand, Debug)]
pub enum SpectrumCommand {
    /// Closed-form Coulomb-Kratzer levels
    #[command(args_override_self = true)]
    Analytic(AnalyticArgs),
    /// Finite-difference levels matched against the closed form
    #[command(args_override_self = true)]
    Numeric(NumericArgs),
}

#[derive(Subcommand, Debug)]
pub enum SolveCommand {
    /// Harmonic oscillator on the real line, levels 2n+1
    #[command(args_override_self = true)]
    Oscillator(OscillatorArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat JSON object of default flag values; flags on the command line win
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ContourKind {
    #[value(alias = "u", alias = "u-shaped")]
    Ushaped,
    #[value(alias = "straight", alias = "straight-line")]
    Line,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mass {
    #[value(alias = "positive", alias = "+1", alias = "1")]
    Pos,
    #[value(alias = "negative", alias = "-1")]
    Neg,
}

pub fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not a finite number"))
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum HalfWidth {
    Auto,
    Value(f64),
}

fn half_width(s: &str) -> Result<HalfWidth, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(HalfWidth::Auto);
    }
    let v = finite(s)?;
    if v > 0.0 {
        Ok(HalfWidth::Value(v))
    } else {
        Err(format!("S must be > 0, got {v}"))
    }
}

#[derive(Args, Debug)]
pub struct ContourSampleArgs {
    #[arg(long, value_enum, default_value = "ushaped")]
    pub kind: ContourKind,
    /// Arc radius of the U-shaped contour
    #[arg(long, default_value = "1", value_parser = finite)]
    pub epsilon: f64,
    /// Angle of the straight line below the real axis on the right
    #[arg(long, default_value = "0", value_parser = finite, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, default_value = "-10", value_parser = finite, allow_hyphen_values = true)]
    pub smin: f64,
    #[arg(long, default_value = "10", value_parser = finite, allow_hyphen_values = true)]
    pub smax: f64,
    #[arg(long, default_value_t = 400)]
    pub n: usize,
    /// Append a pt_residual column, |x(-s) + conj x(s)|
    #[arg(long)]
    pub with_pt_residual: bool,
    #[command(flatten)]
    pub common: Common,
}

/// Coulomb-Kratzer coupling. Give either `--L`, or `--ell` with `--F`.
#[derive(Args, Debug, Clone)]
pub struct Coupling {
    #[arg(long = "Z", default_value = "1", value_parser = finite, allow_hyphen_values = true)]
    pub z: f64,
    /// Effective angular momentum
    #[arg(long = "L", value_parser = finite, allow_hyphen_values = true)]
    pub l: Option<f64>,
    /// Bare angular momentum, combined with --F into L(L+1) = ell(ell+1) + F
    #[arg(long = "ell")]
    pub ell: Option<u32>,
    #[arg(long = "F", value_parser = finite, allow_hyphen_values = true)]
    pub f: Option<f64>,
}

#[derive(Args, Debug)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub coupling: Coupling,
    #[arg(long, default_value_t = 4)]
    pub nmax: u32,
    #[arg(long, value_enum, default_value = "neg")]
    pub mass: Mass,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct NumericArgs {
    #[command(flatten)]
    pub coupling: Coupling,
    #[arg(long, default_value = "1", value_parser = finite)]
    pub epsilon: f64,
    /// Half-width of the s-domain, or "auto" for max(15, 3/kappa_min)
    #[arg(long = "S", default_value = "auto", value_parser = half_width)]
    pub s: HalfWidth,
    #[arg(long = "N", default_value_t = 4000)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub nmax: u32,
    /// Skip the second run at half the step
    #[arg(long)]
    pub no_convergence: bool,
    /// Keep S as given instead of widening it so contour junctions fall on cell midpoints
    #[arg(long)]
    pub unaligned: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct Figure3Args {
    #[arg(long = "Z", default_value = "1", value_parser = finite, allow_hyphen_values = true)]
    pub z: f64,
    #[arg(long, default_value = "0.05", value_parser = finite)]
    pub grid_min: f64,
    #[arg(long, default_value = "6", value_parser = finite)]
    pub grid_max: f64,
    #[arg(long, default_value_t = 400)]
    pub grid_n: usize,
    #[arg(long, default_value_t = 4)]
    pub nmax: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct StabilityArgs {
    #[arg(long, value_enum, default_value = "neg")]
    pub mass_sign: Mass,
    #[arg(long, value_enum, default_value = "ushaped")]
    pub contour: ContourKind,
    #[arg(long, default_value = "1", value_parser = finite)]
    pub epsilon: f64,
    #[arg(long, default_value = "0", value_parser = finite, allow_hyphen_values = true)]
    pub phi: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct OscillatorArgs {
    #[arg(long, default_value_t = 4)]
    pub nmax: u32,
    #[arg(long = "S", default_value = "10", value_parser = finite)]
    pub s: f64,
    #[arg(long = "N", default_value_t = 2000)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct GroundStateArgs {
    #[command(flatten)]
    pub coupling: Coupling,
    #[arg(long, default_value_t = 10)]
    pub nmax: u32,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Contour(ContourCommand::Sample(a)) => &a.common,
            Command::Spectrum(SpectrumCommand::Analytic(a)) => &a.common,
            Command::Spectrum(SpectrumCommand::Numeric(a)) => &a.common,
            Command::Figure3(a) => &a.common,
            Command::Stability(a) => &a.common,
            Command::Solve(SolveCommand::Oscillator(a)) => &a.common,
            Command::GroundState(a) => &a.common,
        }
    }

    /// Subcommand names from the root, e.g. `["spectrum", "numeric"]`.
    pub fn path(&self) -> &'static [&'static str] {
        match self {
            Command::Contour(_) => &["contour", "sample"],
            Command::Spectrum(SpectrumCommand::Analytic(_)) => &["spectrum", "analytic"],
            Command::Spectrum(SpectrumCommand::Numeric(_)) => &["spectrum", "numeric"],
            Command::Figure3(_) => &["figure3"],
            Command::Stability(_) => &["stability"],
            Command::Solve(_) => &["solve", "oscillator"],
            Command::GroundState(_) => &["ground-state"],
        }
    }
}
