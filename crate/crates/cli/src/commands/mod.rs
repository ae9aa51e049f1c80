mod analytic;
mod contour;
mod numeric;
mod oscillator;
mod stability;

use ptspec::model::{effective_l, MassSign};
use ptspec::solver::DEFAULT_DENSE_CEILING;

use crate::args::{Command, ContourCommand, Coupling, Format, Mass, SolveCommand, SpectrumCommand};

pub const DENSE_CEILING_VAR: &str = "PTSPEC_DENSE_CEILING";

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or configuration: exit 1.
    Usage(String),
    /// A library error; exit 1 for invalid input, 2 for numerical failures.
    Model(ptspec::Error),
    /// A numerical failure after which some results are still worth emitting.
    Partial { output: String, error: ptspec::Error },
}

impl From<ptspec::Error> for Failure {
    fn from(e: ptspec::Error) -> Self {
        Failure::Model(e)
    }
}

pub fn run(command: &Command) -> Result<String, Failure> {
    let format = command.common().format;
    match command {
        Command::Contour(ContourCommand::Sample(a)) => contour::sample(a, format.unwrap_or(Format::Csv)),
        Command::Spectrum(SpectrumCommand::Analytic(a)) => analytic::spectrum(a, format.unwrap_or(Format::Csv)),
        Command::Spectrum(SpectrumCommand::Numeric(a)) => numeric::run(a, format.unwrap_or(Format::Json)),
        Command::Figure3(a) => analytic::figure3(a, format.unwrap_or(Format::Csv)),
        Command::Stability(a) => stability::run(a, format.unwrap_or(Format::Json)),
        Command::Solve(SolveCommand::Oscillator(a)) => oscillator::run(a, format.unwrap_or(Format::Json)),
        Command::GroundState(a) => analytic::ground_state(a, format.unwrap_or(Format::Json)),
    }
}

pub fn mass_sign(m: Mass) -> MassSign {
    match m {
        Mass::Pos => MassSign::Positive,
        Mass::Neg => MassSign::Negative,
    }
}

/// Effective `L` from `--L`, or from `--ell` and `--F`.
pub fn resolve_l(c: &Coupling) -> Result<f64, Failure> {
    match (c.l, c.ell, c.f) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            Err(Failure::Usage("give either --L or --ell/--F, not both".into()))
        }
        (Some(l), None, None) => Ok(l),
        (None, None, None) => Err(Failure::Usage("one of --L or --ell/--F is required".into())),
        (None, ell, f) => Ok(effective_l(ell.unwrap_or(0), f.unwrap_or(0.0))?.l),
    }
}

pub fn dense_ceiling() -> Result<usize, Failure> {
    match std::env::var(DENSE_CEILING_VAR) {
        Err(_) => Ok(DEFAULT_DENSE_CEILING),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{DENSE_CEILING_VAR} must be a positive integer, got {v:?}"))),
    }
}
