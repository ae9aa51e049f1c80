use ptspec::contour::Contour;
use serde::Serialize;

use super::Failure;
use crate::args::{ContourKind, ContourSampleArgs, Format};
use crate::format::{cell, json_f64, json_opt_f64, to_json, Csv};

#[derive(Serialize)]
struct Row {
    #[serde(serialize_with = "json_f64")]
    s: f64,
    #[serde(serialize_with = "json_f64")]
    re_x: f64,
    #[serde(serialize_with = "json_f64")]
    im_x: f64,
    #[serde(serialize_with = "json_f64")]
    re_dx: f64,
    #[serde(serialize_with = "json_f64")]
    im_dx: f64,
    #[serde(serialize_with = "json_f64")]
    pt_residual: f64,
}

#[derive(Serialize)]
struct Document {
    kind: &'static str,
    #[serde(serialize_with = "json_opt_f64", skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[serde(serialize_with = "json_opt_f64", skip_serializing_if = "Option::is_none")]
    phi: Option<f64>,
    samples: Vec<Row>,
}

pub fn sample(a: &ContourSampleArgs, format: Format) -> Result<String, Failure> {
    let contour = match a.kind {
        ContourKind::Ushaped => Contour::u_shaped(a.epsilon)?,
        ContourKind::Line => Contour::straight_line(a.phi)?,
    };
    let rows: Vec<Row> = contour
        .sample(a.smin, a.smax, a.n)?
        .into_iter()
        .map(|p| Row { s: p.s, re_x: p.x.re, im_x: p.x.im, re_dx: p.dx.re, im_dx: p.dx.im, pt_residual: p.pt_residual })
        .collect();
    Ok(match format {
        Format::Json => {
            let (kind, epsilon, phi) = match contour {
                Contour::UShaped { epsilon } => ("ushaped", Some(epsilon), None),
                Contour::StraightLine { phi } => ("line", None, Some(phi)),
            };
            to_json(&Document { kind, epsilon, phi, samples: rows })
        }
        Format::Csv => {
            let mut header = vec!["s", "re_x", "im_x", "re_dx", "im_dx"];
            if a.with_pt_residual {
                header.push("pt_residual");
            }
            let mut csv = Csv::new(&header);
            for r in &rows {
                let mut fields = vec![cell(r.s), cell(r.re_x), cell(r.im_x), cell(r.re_dx), cell(r.im_dx)];
                if a.with_pt_residual {
                    fields.push(cell(r.pt_residual));
                }
                csv.row(&fields);
            }
            csv.finish()
        }
    })
}
