use ptspec::contour::Contour;
use ptspec::model::{MassSign, Potential};
use ptspec::solver::{
    discretize, find_bound_states, full_spectrum, BoundStateOptions, BoundStateProblem, DenseOptions, GridSpec,
};
use serde::Serialize;

use super::numeric::{convergence_rows, level_rows, levels_csv, ConvergenceRow, GridRow, LevelRow};
use super::{dense_ceiling, Failure};
use crate::args::{Format, OscillatorArgs};
use crate::format::{json_opt_f64, to_json};

#[derive(Serialize)]
struct Document {
    grid: GridRow,
    levels: Vec<LevelRow>,
    /// Lowest dense eigenvalues (real parts), when the matrix fits under the ceiling.
    dense: Option<Vec<DenseValue>>,
    #[serde(serialize_with = "json_opt_f64")]
    order_estimate: Option<f64>,
    convergence: Vec<ConvergenceRow>,
}

#[derive(Serialize)]
struct DenseValue {
    #[serde(serialize_with = "crate::format::json_f64")]
    re: f64,
    #[serde(serialize_with = "crate::format::json_f64")]
    im: f64,
}

pub fn run(a: &OscillatorArgs, format: Format) -> Result<String, Failure> {
    let grid = GridSpec::new(a.s, a.n)?;
    let problem = BoundStateProblem::Oscillator;
    let result = find_bound_states(&problem, &grid, a.nmax, &BoundStateOptions::default())?;
    let rows = level_rows(&problem.seeds(a.nmax), &result);

    let ceiling = dense_ceiling()?;
    let dense = if a.n <= ceiling {
        let op = discretize(&Contour::straight_line(0.0)?, &Potential::oscillator(), 0.0, MassSign::Positive, &grid)?;
        let values = full_spectrum(&op.matrix, DenseOptions { ceiling, ..DenseOptions::default() })?;
        Some(
            values
                .iter()
                .take(a.nmax as usize + 1)
                .map(|z| DenseValue { re: z.re, im: z.im })
                .collect(),
        )
    } else {
        None
    };

    let text = match format {
        Format::Json => to_json(&Document {
            grid: result.grid.into(),
            levels: rows,
            dense,
            order_estimate: result.convergence.as_ref().and_then(|c| c.order_estimate),
            convergence: convergence_rows(&result),
        }),
        Format::Csv => levels_csv(&rows),
    };
    match result.unmatched.iter().find_map(|u| u.failure.clone()) {
        Some(error) => Err(Failure::Partial { output: text, error }),
        None => Ok(text),
    }
}
