use ptspec::contour::Contour;
use ptspec::model::{stability_verdict, MassConfig};
use serde::Serialize;

use super::{mass_sign, Failure};
use crate::args::{ContourKind, Format, StabilityArgs};
use crate::format::{text_cell, to_json, Csv};

#[derive(Serialize)]
struct Verdict {
    bounded_below: bool,
    narrative: String,
}

pub fn run(a: &StabilityArgs, format: Format) -> Result<String, Failure> {
    let contour = match a.contour {
        ContourKind::Ushaped => Contour::u_shaped(a.epsilon)?,
        ContourKind::Line => Contour::straight_line(a.phi)?,
    };
    let v = stability_verdict(MassConfig::unit(mass_sign(a.mass_sign)), &contour)?;
    let out = Verdict { bounded_below: v.bounded_below, narrative: v.narrative };
    Ok(match format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut csv = Csv::new(&["bounded_below", "narrative"]);
            csv.row(&[out.bounded_below.to_string(), text_cell(&out.narrative)]);
            csv.finish()
        }
    })
}
