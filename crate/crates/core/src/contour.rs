//! Complexified coordinate paths `x(s)` parametrized by a real variable `s`.
//!
//! Two families are supported:
//!
//! * [`Contour::StraightLine`]: the wedge path `x(s) = s e^{+i phi}` for `s >= 0`
//!   and `x(s) = s e^{-i phi}` for `s < 0`. Its vertex sits at the origin.
//! * [`Contour::UShaped`]: a path coming down the upper imaginary half-axis
//!   (shifted left by `epsilon`), circling below the origin at radius `epsilon`
//!   and going back up (shifted right by `epsilon`). It is parametrized by arc
//!   length, so `|x'(s)| = 1` everywhere.
//!
//! Every contour here satisfies `x(-s) = -conj(x(s))`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contour {
    StraightLine { phi: f64 },
    UShaped { epsilon: f64 },
}

impl Contour {
    pub fn straight_line(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidInput(format!("phi must be finite, got {phi}")));
        }
        Ok(Contour::StraightLine { phi })
    }

    /// `epsilon = 0` is accepted for sampling only; see [`Contour::is_discretizable`].
    pub fn u_shaped(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must be finite and >= 0, got {epsilon}"
            )));
        }
        Ok(Contour::UShaped { epsilon })
    }

    /// Half arc length of the circular part; the junctions sit at `s = +-junction()`.
    pub fn junction(&self) -> Option<f64> {
        match *self {
            Contour::UShaped { epsilon } => Some(FRAC_PI_2 * epsilon),
            Contour::StraightLine { .. } => None,
        }
    }

    /// The degenerate `epsilon = 0` path folds onto the branch cut and cannot be discretized.
    pub fn is_discretizable(&self) -> bool {
        match *self {
            Contour::UShaped { epsilon } => epsilon > 0.0,
            Contour::StraightLine { .. } => true,
        }
    }

    pub fn evaluate(&self, s: f64) -> Complex64 {
        match *self {
            Contour::StraightLine { phi } => {
                let angle = if s >= 0.0 { phi } else { -phi };
                s * Complex64::from_polar(1.0, angle)
            }
            Contour::UShaped { epsilon } => {
                let j = FRAC_PI_2 * epsilon;
                if s < -j {
                    Complex64::new(-epsilon, -(s + j))
                } else if s > j {
                    Complex64::new(epsilon, s - j)
                } else if epsilon == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    // eps * exp(i(theta - pi/2)) = eps * (sin(theta) - i cos(theta)),
                    // written this way so that x(-s) = -conj(x(s)) holds bit for bit.
                    let theta = s / epsilon;
                    Complex64::new(epsilon * theta.sin(), -epsilon * theta.cos())
                }
            }
        }
    }

    /// Analytic `(x'(s), x''(s))`.
    ///
    /// At the U-contour junctions the arc-side value is reported. For the
    /// degenerate `epsilon = 0` contour, `s >= 0` belongs to the right branch.
    /// A straight line with `phi != 0` has a kink at `s = 0`; the `s >= 0`
    /// branch is reported there.
    pub fn derivatives(&self, s: f64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        match *self {
            Contour::StraightLine { phi } => {
                let angle = if s >= 0.0 { phi } else { -phi };
                (Complex64::from_polar(1.0, angle), zero)
            }
            Contour::UShaped { epsilon } => {
                let j = FRAC_PI_2 * epsilon;
                if epsilon == 0.0 {
                    return if s >= 0.0 { (I, zero) } else { (-I, zero) };
                }
                if s < -j {
                    (-I, zero)
                } else if s > j {
                    (I, zero)
                } else {
                    let theta = s / epsilon;
                    let dx = Complex64::new(theta.cos(), theta.sin());
                    (dx, I * dx / epsilon)
                }
            }
        }
    }

    /// `1/x'(s)` as used by the flux-form discretization.
    ///
    /// Where `x'` jumps (the vertex of a tilted straight line) this returns the
    /// reciprocal of the symmetric secant slope, `1/cos(phi)`, which keeps the
    /// discrete operator PT-symmetric.
    pub(crate) fn inverse_slope(&self, s: f64) -> Complex64 {
        match *self {
            Contour::StraightLine { phi } if s == 0.0 && phi != 0.0 => {
                Complex64::new(1.0 / phi.cos(), 0.0)
            }
            _ => self.derivatives(s).0.inv(),
        }
    }

    /// `|x(-s) + conj(x(s))|`, zero for an exactly PT-symmetric path.
    pub fn pt_residual(&self, s: f64) -> f64 {
        (self.evaluate(-s) + self.evaluate(s).conj()).norm()
    }

    /// `n` equally spaced samples on `[s_min, s_max]`, both ends included.
    pub fn sample(&self, s_min: f64, s_max: f64, n: usize) -> Result<Vec<ContourSample>> {
        if !(s_min.is_finite() && s_max.is_finite()) || s_max < s_min {
            return Err(Error::InvalidInput(format!(
                "sampling interval [{s_min}, {s_max}] is empty or not finite"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidInput("sample count must be positive".into()));
        }
        let step = if n > 1 { (s_max - s_min) / (n - 1) as f64 } else { 0.0 };
        Ok((0..n)
            .map(|k| {
                let s = if k + 1 == n && n > 1 { s_max } else { s_min + k as f64 * step };
                let (dx, _) = self.derivatives(s);
                ContourSample {
                    s,
                    x: self.evaluate(s),
                    dx,
                    pt_residual: self.pt_residual(s),
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSample {
    pub s: f64,
    pub x: Complex64,
    pub dx: Complex64,
    pub pt_residual: f64,
}

/// Complex phase in `(-3pi/2, pi/2]`, the convention for a branch cut running
/// from `x = 0` straight up.
pub fn phase(x: Complex64) -> f64 {
    let arg = x.arg();
    if arg > FRAC_PI_2 {
        arg - 2.0 * PI
    } else {
        arg
    }
}

/// Admissible interval of asymptote angles `phi` for the potential `x^2 (ix)^(4 delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleWindow {
    pub lower: f64,
    pub upper: f64,
    pub optimal: f64,
}

impl AngleWindow {
    pub fn contains(&self, phi: f64) -> bool {
        self.lower < phi && phi < self.upper
    }
}

/// The `branch`-th wedge of asymptote angles for exponent `delta`.
///
/// Branch 0 is `phi + pi/2 in (pi/(4+4delta), 3pi/(4+4delta))`, branch 1 the
/// next one, `(3pi/(4+4delta), 5pi/(4+4delta))`, and so on. The optimal slope
/// is the midpoint.
pub fn angle_window(delta: f64, branch: i32) -> Result<AngleWindow> {
    if !delta.is_finite() || delta <= -1.0 {
        return Err(Error::Domain(format!(
            "angle window needs delta > -1, got {delta}"
        )));
    }
    let unit = PI / (4.0 + 4.0 * delta);
    let b = f64::from(branch);
    let lower = (1.0 + 2.0 * b) * unit - FRAC_PI_2;
    let upper = (3.0 + 2.0 * b) * unit - FRAC_PI_2;
    let optimal = (1.0 + b) * PI / (2.0 + 2.0 * delta) - FRAC_PI_2;
    Ok(AngleWindow { lower, upper, optimal })
}
