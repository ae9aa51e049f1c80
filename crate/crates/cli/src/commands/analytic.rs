use ptspec::analytic::{figure3_data, ground_state_report, spectrum_table};
use serde::Serialize;

use super::{mass_sign, resolve_l, Failure};
use crate::args::{AnalyticArgs, Figure3Args, Format, GroundStateArgs};
use crate::format::{cell, json_f64, json_opt_f64, opt_cell, text_cell, to_json, Csv};

#[derive(Serialize)]
struct LevelRow {
    n: u32,
    sigma: i8,
    #[serde(serialize_with = "json_opt_f64")]
    energy: Option<f64>,
    #[serde(serialize_with = "json_opt_f64")]
    kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

#[derive(Serialize)]
struct SpectrumDocument {
    #[serde(serialize_with = "json_f64")]
    z: f64,
    #[serde(serialize_with = "json_f64")]
    l: f64,
    mass: &'static str,
    levels: Vec<LevelRow>,
}

/// Levels in ascending energy; singular `(n, sigma)` pairs follow as gap rows.
pub fn spectrum(a: &AnalyticArgs, format: Format) -> Result<String, Failure> {
    let l = resolve_l(&a.coupling)?;
    let z = a.coupling.z;
    let mass = mass_sign(a.mass);
    let table = spectrum_table(z, l, a.nmax, mass);
    let mut rows: Vec<LevelRow> = table
        .levels
        .iter()
        .map(|lv| LevelRow { n: lv.n, sigma: lv.sigma.sign(), energy: Some(lv.energy), kappa: Some(lv.kappa), skipped: None })
        .collect();
    rows.extend(table.skipped.iter().map(|s| LevelRow {
        n: s.n,
        sigma: s.sigma,
        energy: None,
        kappa: None,
        skipped: Some(s.reason.clone()),
    }));
    Ok(match format {
        Format::Json => to_json(&SpectrumDocument {
            z,
            l,
            mass: match a.mass {
                crate::args::Mass::Pos => "pos",
                crate::args::Mass::Neg => "neg",
            },
            levels: rows,
        }),
        Format::Csv => {
            let mut csv = Csv::new(&["n", "sigma", "energy", "kappa"]);
            for r in &rows {
                csv.row(&[r.n.to_string(), r.sigma.to_string(), opt_cell(r.energy), opt_cell(r.kappa)]);
            }
            csv.finish()
        }
    })
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(rename = "two_L_plus_1", serialize_with = "json_f64")]
    two_l_plus_1: f64,
    n: u32,
    sigma: i8,
    #[serde(serialize_with = "json_opt_f64")]
    minus_kappa: Option<f64>,
}

#[derive(Serialize)]
struct SweepDocument {
    #[serde(serialize_with = "json_f64")]
    z: f64,
    curves: usize,
    rows: Vec<SweepRow>,
}

pub fn figure3(a: &Figure3Args, format: Format) -> Result<String, Failure> {
    if a.grid_n < 2 {
        return Err(Failure::Usage("--grid-n must be at least 2".into()));
    }
    if !(a.grid_min < a.grid_max) {
        return Err(Failure::Usage("--grid-min must be below --grid-max".into()));
    }
    let step = (a.grid_max - a.grid_min) / (a.grid_n - 1) as f64;
    let grid: Vec<f64> = (0..a.grid_n)
        .map(|k| if k + 1 == a.grid_n { a.grid_max } else { a.grid_min + k as f64 * step })
        .collect();
    let rows: Vec<SweepRow> = figure3_data(a.z, &grid, a.nmax)
        .into_iter()
        .map(|r| SweepRow { two_l_plus_1: r.two_l_plus_1, n: r.n, sigma: r.sigma, minus_kappa: r.minus_kappa })
        .collect();
    Ok(match format {
        Format::Json => to_json(&SweepDocument { z: a.z, curves: 2 * (a.nmax as usize + 1), rows }),
        Format::Csv => {
            let mut csv = Csv::new(&["two_L_plus_1", "n", "sigma", "minus_kappa"]);
            for r in &rows {
                csv.row(&[cell(r.two_l_plus_1), r.n.to_string(), r.sigma.to_string(), opt_cell(r.minus_kappa)]);
            }
            csv.finish()
        }
    })
}

#[derive(Serialize)]
struct GroundStateDocument {
    #[serde(rename = "Z", serialize_with = "json_f64")]
    z: f64,
    #[serde(rename = "L", serialize_with = "json_f64")]
    l: f64,
    #[serde(rename = "M0")]
    m0: u32,
    #[serde(serialize_with = "json_f64")]
    alpha: f64,
    #[serde(serialize_with = "json_f64")]
    compact_formula: f64,
    #[serde(serialize_with = "json_f64")]
    bruteforce: f64,
    bruteforce_n: u32,
    bruteforce_sigma: i8,
    #[serde(serialize_with = "json_f64")]
    parity_formula: f64,
    #[serde(serialize_with = "json_f64")]
    discrepancy: f64,
    note: &'static str,
}

const GROUND_STATE_NOTE: &str = "compact_formula is -Z^2/min(sin^2 alpha, cos^2 alpha); \
bruteforce is the lowest enumerated level -Z^2/(2L+1+sigma(2n+1))^2, which equals parity_formula \
(-Z^2/cos^4 alpha for odd M0, -Z^2/sin^4 alpha for even M0). The compact form is not used as ground truth.";

pub fn ground_state(a: &GroundStateArgs, format: Format) -> Result<String, Failure> {
    let l = resolve_l(&a.coupling)?;
    let r = ground_state_report(a.coupling.z, l, a.nmax)?;
    let doc = GroundStateDocument {
        z: r.z,
        l: r.l,
        m0: r.m0,
        alpha: r.alpha,
        compact_formula: r.compact_formula,
        bruteforce: r.bruteforce,
        bruteforce_n: r.bruteforce_n,
        bruteforce_sigma: r.bruteforce_sigma,
        parity_formula: r.parity_formula,
        discrepancy: r.compact_minus_bruteforce,
        note: GROUND_STATE_NOTE,
    };
    Ok(match format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut csv = Csv::new(&[
                "Z", "L", "M0", "alpha", "compact_formula", "bruteforce", "bruteforce_n", "bruteforce_sigma",
                "parity_formula", "discrepancy", "note",
            ]);
            csv.row(&[
                cell(doc.z),
                cell(doc.l),
                doc.m0.to_string(),
                cell(doc.alpha),
                cell(doc.compact_formula),
                cell(doc.bruteforce),
                doc.bruteforce_n.to_string(),
                doc.bruteforce_sigma.to_string(),
                cell(doc.parity_formula),
                cell(doc.discrepancy),
                text_cell(doc.note),
            ]);
            csv.finish()
        }
    })
}
