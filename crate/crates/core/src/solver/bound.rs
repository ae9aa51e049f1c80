use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{normalizable_on_ushaped, spectrum_table, Branch};
use crate::contour::Contour;
use crate::error::{Error, Result};
use crate::model::{MassSign, Potential};
use crate::solver::eigen::{targeted_eigenvalue, Eigenpair, TargetOptions};
use crate::solver::grid::{GridSpec, ResolvedGrid};
use crate::solver::operator::{discretize_on, DiscretizedOperator};

/// Seeds are only used when `S >= DECAY_LENGTHS / kappa`.
pub const DECAY_LENGTHS: f64 = 3.0;
/// Eigenvectors decaying slower than this fraction of the smallest seeded
/// `kappa` are treated as discretized continuum.
pub const SPURIOUS_RATE_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundStateProblem {
    /// Negative bare mass on the U-shaped contour.
    CoulombKratzer { z: f64, l: f64, epsilon: f64 },
    /// `-d^2/dx^2 + x^2` on the real line, levels `2n + 1`.
    Oscillator,
}

impl BoundStateProblem {
    fn setup(&self) -> Result<(Contour, Potential, f64, MassSign)> {
        Ok(match *self {
            BoundStateProblem::CoulombKratzer { z, l, epsilon } => (
                Contour::u_shaped(epsilon)?,
                Potential::coulomb_kratzer(z, 0.0)?,
                l,
                MassSign::Negative,
            ),
            BoundStateProblem::Oscillator => {
                (Contour::straight_line(0.0)?, Potential::oscillator(), 0.0, MassSign::Positive)
            }
        })
    }

    pub fn contour(&self) -> Result<Contour> {
        Ok(self.setup()?.0)
    }

    /// Analytic targets for `n <= n_max`, in ascending energy, before any
    /// truncation filter.
    pub fn seeds(&self, n_max: u32) -> Vec<Seed> {
        match *self {
            BoundStateProblem::CoulombKratzer { z, l, .. } => spectrum_table(z, l, n_max, MassSign::Negative)
                .levels
                .into_iter()
                .map(|lv| Seed {
                    n: lv.n,
                    sigma: Some(lv.sigma),
                    energy: lv.energy,
                    kappa: Some(lv.kappa),
                    normalizable: Some(normalizable_on_ushaped(z, l, lv.n, lv.sigma)),
                })
                .collect(),
            BoundStateProblem::Oscillator => (0..=n_max)
                .map(|n| Seed {
                    n,
                    sigma: None,
                    energy: 2.0 * f64::from(n) + 1.0,
                    kappa: None,
                    normalizable: None,
                })
                .collect(),
        }
    }

    pub fn operator(&self, grid: ResolvedGrid) -> Result<DiscretizedOperator> {
        let (contour, potential, l, mass) = self.setup()?;
        discretize_on(&contour, &potential, l, mass, grid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Seed {
    pub n: u32,
    #[serde(serialize_with = "ser_sigma")]
    pub sigma: Option<Branch>,
    pub energy: f64,
    /// Decay rate `sqrt(-E)` of a Coulomb-Kratzer level; `None` for the oscillator.
    pub kappa: Option<f64>,
    /// Whether the closed-form eigenfunction decays along the U-contour.
    pub normalizable: Option<bool>,
}

fn ser_sigma<S: serde::Serializer>(sigma: &Option<Branch>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match sigma {
        Some(b) => s.serialize_some(&b.sign()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayRates {
    pub left_rate: f64,
    pub right_rate: f64,
}

impl DecayRates {
    pub fn is_spurious(&self, kappa_min: f64) -> bool {
        self.left_rate.max(self.right_rate) < SPURIOUS_RATE_FRACTION * kappa_min
    }
}

/// Exponential decay rates of `|psi|` fitted by least squares on the outer
/// quarters of the grid.
///
/// The outermost tenth of each side is left out, where the Dirichlet end bends
/// the tail, and so are points below `1e-13` of the peak.
pub fn eigenvector_asymptotics(eigenvector: &[Complex64], grid: &ResolvedGrid) -> Result<DecayRates> {
    if eigenvector.len() != grid.nodes {
        return Err(Error::InvalidInput(format!(
            "eigenvector has {} entries, grid has {} nodes",
            eigenvector.len(),
            grid.nodes
        )));
    }
    let s = grid.nodes();
    let peak = eigenvector.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(peak > 0.0) {
        return Err(Error::Fit("eigenvector vanishes".into()));
    }
    let half = grid.half_width;
    let fit = |right: bool| -> Result<f64> {
        let pts: Vec<(f64, f64)> = s
            .iter()
            .zip(eigenvector)
            .filter(|(&si, _)| (si > 0.0) == right)
            .map(|(&si, z)| (si.abs(), z.norm()))
            .filter(|&(a, m)| a >= 0.5 * half && a <= 0.9 * half && m >= 1e-13 * peak)
            .map(|(a, m)| (a, m.ln()))
            .collect();
        if pts.len() < 4 {
            return Err(Error::Fit(format!(
                "only {} usable tail points on the {} side",
                pts.len(),
                if right { "right" } else { "left" }
            )));
        }
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        Ok(-sxy / sxx)
    };
    Ok(DecayRates { left_rate: fit(false)?, right_rate: fit(true)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundStateOptions {
    pub target: TargetOptions,
    /// Repeat on the grid with half the step and estimate the order.
    pub convergence: bool,
}

impl Default for BoundStateOptions {
    fn default() -> Self {
        BoundStateOptions { target: TargetOptions::default(), convergence: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchedLevel {
    pub seed: Seed,
    #[serde(serialize_with = "ser_complex")]
    pub eigenvalue: Complex64,
    /// `|eigenvalue - seed.energy|`.
    pub residual: f64,
    /// `||A v - lambda v||` of the targeted eigenpair.
    pub solver_residual: f64,
    pub iterations: usize,
    pub decay: Option<DecayRates>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnmatchedSeed {
    pub seed: Seed,
    #[serde(serialize_with = "ser_opt_complex")]
    pub nearest: Option<Complex64>,
    pub reason: String,
    /// The solver error, when the search itself failed.
    #[serde(skip)]
    pub failure: Option<Error>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelConvergence {
    pub n: u32,
    #[serde(serialize_with = "ser_sigma")]
    pub sigma: Option<Branch>,
    pub coarse_error: f64,
    pub fine_error: f64,
    /// `coarse_error / fine_error`; 4 for a second-order scheme.
    pub ratio: f64,
    pub order: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Convergence {
    pub fine_grid: ResolvedGrid,
    pub levels: Vec<LevelConvergence>,
    /// Order of the lowest level matched on both grids.
    pub order_estimate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub grid: ResolvedGrid,
    /// Every eigenvalue found by the targeted searches, in seed order.
    #[serde(serialize_with = "ser_complex_vec")]
    pub eigenvalues: Vec<Complex64>,
    pub matched: Vec<MatchedLevel>,
    pub unmatched: Vec<UnmatchedSeed>,
    pub convergence: Option<Convergence>,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_opt_complex<S: serde::Serializer>(z: &Option<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    z.map(|z| [z.re, z.im]).serialize(s)
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
}

/// `max(1e-3, 5 h^2 |E|)`.
pub fn match_tolerance(step: f64, energy: f64) -> f64 {
    (5.0 * step * step * energy.abs()).max(1e-3)
}

enum Outcome {
    Matched(MatchedLevel),
    Unmatched(UnmatchedSeed),
}

fn solve_seed(op: &DiscretizedOperator, seed: Seed, kappa_min: Option<f64>, opts: &BoundStateOptions) -> (Option<Complex64>, Outcome) {
    let pair: Eigenpair = match targeted_eigenvalue(&op.matrix, Complex64::new(seed.energy, 0.0), opts.target) {
        Ok(p) => p,
        Err(e) => {
            let reason = e.to_string();
            return (None, Outcome::Unmatched(UnmatchedSeed { seed, nearest: None, reason, failure: Some(e) }));
        }
    };
    let lambda = pair.eigenvalue;
    let residual = (lambda - seed.energy).norm();
    let tol = match_tolerance(op.step(), seed.energy);
    let decay = eigenvector_asymptotics(&pair.eigenvector, &op.meta.grid).ok();
    if residual > tol {
        let reason = format!("nearest eigenvalue is {residual:.3e} away (tolerance {tol:.1e})");
        return (Some(lambda), Outcome::Unmatched(UnmatchedSeed { seed, nearest: Some(lambda), reason, failure: None }));
    }
    if let (Some(rates), Some(kmin)) = (decay, kappa_min) {
        if rates.is_spurious(kmin) {
            let reason = format!(
                "spurious continuum mode: decay rates {:.3e}/{:.3e}",
                rates.left_rate, rates.right_rate
            );
            return (Some(lambda), Outcome::Unmatched(UnmatchedSeed { seed, nearest: Some(lambda), reason, failure: None }));
        }
    }
    (
        Some(lambda),
        Outcome::Matched(MatchedLevel {
            seed,
            eigenvalue: lambda,
            residual,
            solver_residual: pair.residual,
            iterations: pair.iterations,
            decay,
        }),
    )
}

fn run_grid(problem: &BoundStateProblem, grid: ResolvedGrid, seeds: &[Seed], opts: &BoundStateOptions) -> Result<(Vec<Complex64>, Vec<MatchedLevel>, Vec<UnmatchedSeed>)> {
    let op = problem.operator(grid)?;
    let kappa_min = seeds.iter().filter_map(|s| s.kappa).reduce(f64::min);
    let mut eigenvalues = Vec::new();
    let mut matched = Vec::new();
    let mut unmatched = Vec::new();
    for &seed in seeds {
        let (lambda, outcome) = solve_seed(&op, seed, kappa_min, opts);
        eigenvalues.extend(lambda);
        match outcome {
            Outcome::Matched(m) => matched.push(m),
            Outcome::Unmatched(u) => unmatched.push(u),
        }
    }
    Ok((eigenvalues, matched, unmatched))
}

/// Seeds shift-invert searches at the analytic levels with `n <= n_max` and
/// matches the results against them.
///
/// Levels with `S < 3/kappa` are not seeded. Failures of individual searches
/// are reported in `unmatched`.
pub fn find_bound_states(
    problem: &BoundStateProblem,
    grid: &GridSpec,
    n_max: u32,
    opts: &BoundStateOptions,
) -> Result<SpectrumResult> {
    let resolved = grid.resolve(&problem.contour()?)?;
    let seeds: Vec<Seed> = problem
        .seeds(n_max)
        .into_iter()
        .filter(|s| match s.kappa {
            Some(k) => k > 0.0 && resolved.half_width >= DECAY_LENGTHS / k,
            None => true,
        })
        .collect();
    if seeds.is_empty() {
        return Ok(SpectrumResult { grid: resolved, eigenvalues: vec![], matched: vec![], unmatched: vec![], convergence: None });
    }

    let (eigenvalues, matched, unmatched) = run_grid(problem, resolved, &seeds, opts)?;

    let convergence = if opts.convergence && !matched.is_empty() {
        let fine_grid = resolved.refined();
        let fine_seeds: Vec<Seed> = matched.iter().map(|m| m.seed).collect();
        let (_, fine_matched, _) = run_grid(problem, fine_grid, &fine_seeds, opts)?;
        let levels: Vec<LevelConvergence> = matched
            .iter()
            .filter_map(|c| {
                let f = fine_matched.iter().find(|f| f.seed.n == c.seed.n && f.seed.sigma == c.seed.sigma)?;
                let ratio = c.residual / f.residual;
                Some(LevelConvergence {
                    n: c.seed.n,
                    sigma: c.seed.sigma,
                    coarse_error: c.residual,
                    fine_error: f.residual,
                    ratio,
                    order: ratio.log2(),
                })
            })
            .collect();
        let order_estimate = levels.first().map(|l| l.order).filter(|o| o.is_finite());
        Some(Convergence { fine_grid, levels, order_estimate })
    } else {
        None
    };

    Ok(SpectrumResult { grid: resolved, eigenvalues, matched, unmatched, convergence })
}
