use ptspec::analytic::spectrum_table;
use ptspec::model::MassSign;
use ptspec::solver::{
    find_bound_states, BoundStateOptions, BoundStateProblem, GridSpec, ResolvedGrid, Seed, SpectrumResult,
    DECAY_LENGTHS,
};
use serde::Serialize;

use super::{resolve_l, Failure};
use crate::args::{Format, HalfWidth, NumericArgs};
use crate::format::{json_f64, json_opt_f64, opt_cell, to_json, Csv};

/// Smallest automatic half-width.
const AUTO_MIN_HALF_WIDTH: f64 = 15.0;

#[derive(Serialize)]
pub struct GridRow {
    #[serde(rename = "S", serialize_with = "json_f64")]
    s: f64,
    #[serde(rename = "N")]
    n: usize,
    #[serde(serialize_with = "json_f64")]
    h: f64,
    aligned: bool,
}

impl From<ResolvedGrid> for GridRow {
    fn from(g: ResolvedGrid) -> Self {
        GridRow { s: g.half_width, n: g.nodes, h: g.step(), aligned: g.aligned }
    }
}

#[derive(Serialize)]
pub struct LevelRow {
    pub n: u32,
    pub sigma: Option<i8>,
    #[serde(serialize_with = "json_f64")]
    pub analytic: f64,
    #[serde(serialize_with = "json_opt_f64")]
    pub numeric_re: Option<f64>,
    #[serde(serialize_with = "json_opt_f64")]
    pub numeric_im: Option<f64>,
    #[serde(serialize_with = "json_opt_f64")]
    pub residual: Option<f64>,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalizable: Option<bool>,
    #[serde(serialize_with = "json_opt_f64", skip_serializing_if = "Option::is_none")]
    pub decay_left: Option<f64>,
    #[serde(serialize_with = "json_opt_f64", skip_serializing_if = "Option::is_none")]
    pub decay_right: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize)]
pub struct ConvergenceRow {
    n: u32,
    sigma: Option<i8>,
    #[serde(serialize_with = "json_f64")]
    coarse_error: f64,
    #[serde(serialize_with = "json_f64")]
    fine_error: f64,
    #[serde(serialize_with = "json_f64")]
    ratio: f64,
    #[serde(serialize_with = "json_f64")]
    order: f64,
}

/// One row per analytic seed, in seed order, with whatever the solver found.
pub fn level_rows(all_seeds: &[Seed], result: &SpectrumResult) -> Vec<LevelRow> {
    let same = |a: &Seed, b: &Seed| a.n == b.n && a.sigma == b.sigma;
    all_seeds
        .iter()
        .map(|seed| {
            let base = LevelRow {
                n: seed.n,
                sigma: seed.sigma.map(|s| s.sign()),
                analytic: seed.energy,
                numeric_re: None,
                numeric_im: None,
                residual: None,
                matched: false,
                normalizable: seed.normalizable,
                decay_left: None,
                decay_right: None,
                note: None,
            };
            if let Some(m) = result.matched.iter().find(|m| same(&m.seed, seed)) {
                LevelRow {
                    numeric_re: Some(m.eigenvalue.re),
                    numeric_im: Some(m.eigenvalue.im),
                    residual: Some(m.residual),
                    matched: true,
                    decay_left: m.decay.map(|d| d.left_rate),
                    decay_right: m.decay.map(|d| d.right_rate),
                    ..base
                }
            } else if let Some(u) = result.unmatched.iter().find(|u| same(&u.seed, seed)) {
                LevelRow {
                    numeric_re: u.nearest.map(|z| z.re),
                    numeric_im: u.nearest.map(|z| z.im),
                    residual: u.nearest.map(|z| (z - seed.energy).norm()),
                    note: Some(u.reason.clone()),
                    ..base
                }
            } else {
                LevelRow {
                    note: Some(format!("not seeded: S < {DECAY_LENGTHS}/kappa")),
                    ..base
                }
            }
        })
        .collect()
}

pub fn convergence_rows(result: &SpectrumResult) -> Vec<ConvergenceRow> {
    result
        .convergence
        .iter()
        .flat_map(|c| &c.levels)
        .map(|l| ConvergenceRow {
            n: l.n,
            sigma: l.sigma.map(|s| s.sign()),
            coarse_error: l.coarse_error,
            fine_error: l.fine_error,
            ratio: l.ratio,
            order: l.order,
        })
        .collect()
}

pub fn levels_csv(rows: &[LevelRow]) -> String {
    let mut csv = Csv::new(&["n", "sigma", "analytic", "numeric_re", "numeric_im", "residual", "matched"]);
    for r in rows {
        csv.row(&[
            r.n.to_string(),
            r.sigma.map(|s| s.to_string()).unwrap_or_default(),
            opt_cell(Some(r.analytic)),
            opt_cell(r.numeric_re),
            opt_cell(r.numeric_im),
            opt_cell(r.residual),
            r.matched.to_string(),
        ]);
    }
    csv.finish()
}

#[derive(Serialize)]
struct Document {
    #[serde(rename = "Z", serialize_with = "json_f64")]
    z: f64,
    #[serde(rename = "L", serialize_with = "json_f64")]
    l: f64,
    #[serde(serialize_with = "json_f64")]
    epsilon: f64,
    grid: GridRow,
    levels: Vec<LevelRow>,
    #[serde(serialize_with = "json_opt_f64")]
    order_estimate: Option<f64>,
    fine_grid: Option<GridRow>,
    convergence: Vec<ConvergenceRow>,
}

/// `max(15, 3/kappa_min)` over the closed-form levels with `n <= n_max`.
pub fn auto_half_width(z: f64, l: f64, n_max: u32) -> f64 {
    let kappa_min = spectrum_table(z, l, n_max, MassSign::Negative)
        .levels
        .iter()
        .map(|lv| lv.kappa)
        .filter(|k| *k > 0.0)
        .fold(f64::INFINITY, f64::min);
    if kappa_min.is_finite() {
        AUTO_MIN_HALF_WIDTH.max(DECAY_LENGTHS / kappa_min)
    } else {
        AUTO_MIN_HALF_WIDTH
    }
}

pub fn run(a: &NumericArgs, format: Format) -> Result<String, Failure> {
    let l = resolve_l(&a.coupling)?;
    let z = a.coupling.z;
    let s = match a.s {
        HalfWidth::Auto => auto_half_width(z, l, a.nmax),
        HalfWidth::Value(v) => v,
    };
    let mut grid = GridSpec::new(s, a.n)?;
    if a.unaligned {
        grid = grid.unaligned();
    }
    let problem = BoundStateProblem::CoulombKratzer { z, l, epsilon: a.epsilon };
    let opts = BoundStateOptions { convergence: !a.no_convergence, ..Default::default() };
    let result = find_bound_states(&problem, &grid, a.nmax, &opts)?;

    let rows = level_rows(&problem.seeds(a.nmax), &result);
    let text = match format {
        Format::Json => to_json(&Document {
            z,
            l,
            epsilon: a.epsilon,
            grid: result.grid.into(),
            levels: rows,
            order_estimate: result.convergence.as_ref().and_then(|c| c.order_estimate),
            fine_grid: result.convergence.as_ref().map(|c| c.fine_grid.into()),
            convergence: convergence_rows(&result),
        }),
        Format::Csv => levels_csv(&rows),
    };
    match result.unmatched.iter().find_map(|u| u.failure.clone()) {
        Some(error) => Err(Failure::Partial { output: text, error }),
        None => Ok(text),
    }
}
