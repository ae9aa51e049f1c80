//! Deterministic number rendering: 17 significant digits, plain decimal.

use serde::Serialize;
use serde_json::value::RawValue;

/// `x` with exactly 17 significant digits and no exponent.
///
/// `-0` prints as `0`. Non-finite values print as `nan`, `inf` or `-inf`.
pub fn fixed17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if x < 0.0 { "-" } else { "" };
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{}{}", digits, "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{sign}{body}")
}

fn raw(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { fixed17(x) } else { "null".into() };
    RawValue::from_string(text).expect("valid JSON number")
}

pub fn json_f64<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*x).serialize(s)
}

pub fn json_opt_f64<S: serde::Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    x.map(raw).serialize(s)
}

/// A CSV document with a fixed header.
pub struct Csv {
    text: String,
    width: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { text: format!("{}\n", header.join(",")), width: header.len() }
    }

    pub fn row(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.width, "row width");
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn cell(x: f64) -> String {
    fixed17(x)
}

pub fn opt_cell(x: Option<f64>) -> String {
    x.map(fixed17).unwrap_or_default()
}

/// Quotes a free-text CSV field.
pub fn text_cell(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}
