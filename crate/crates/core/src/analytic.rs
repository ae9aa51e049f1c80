//! Closed-form discrete spectra of the Coulomb-Kratzer model on the U-shaped contour.
//!
//! Levels carry a radial index `n` and a branch `sigma = +-1`; the common
//! denominator is `2L+1 + sigma(2n+1)`. With positive bare mass the levels are
//! `+[Z/den]^2`, with negative bare mass `-[Z/den]^2`.

use std::cmp::Ordering;
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::MassSign;

/// A level whose denominator is smaller than this is a fall-to-center singularity.
pub const SINGULAR_DENOMINATOR: f64 = 1e-12;

/// Sweep points closer than this to a singular denominator become gap records.
pub const SWEEP_GAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Minus, Branch::Plus];

    pub fn sign(self) -> i8 {
        match self {
            Branch::Minus => -1,
            Branch::Plus => 1,
        }
    }

    pub fn from_sign(sign: i8) -> Result<Self> {
        match sign {
            1 => Ok(Branch::Plus),
            -1 => Ok(Branch::Minus),
            other => Err(Error::InvalidInput(format!("sigma must be +1 or -1, got {other}"))),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Level", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("sigma", &self.sigma.sign())?;
        st.serialize_field("energy", &self.energy)?;
        st.serialize_field("kappa", &self.kappa)?;
        st.end()
    }
}

/// One discrete eigenvalue, keyed by `(n, sigma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub n: u32,
    pub sigma: Branch,
    pub energy: f64,
    /// `sqrt(|energy|)`.
    pub kappa: f64,
}

pub fn denominator(l: f64, n: u32, sigma: Branch) -> f64 {
    2.0 * l + 1.0 + f64::from(sigma.sign()) * (2.0 * f64::from(n) + 1.0)
}

pub fn level(z: f64, l: f64, n: u32, sigma: Branch, mass: MassSign) -> Result<Level> {
    let den = denominator(l, n, sigma);
    if den.abs() < SINGULAR_DENOMINATOR {
        return Err(Error::SingularCoupling { n, sigma: sigma.sign(), denominator: den });
    }
    let kappa = (z / den).abs();
    let energy = match mass {
        MassSign::Positive => kappa * kappa,
        MassSign::Negative => -(kappa * kappa),
    };
    Ok(Level { n, sigma, energy, kappa })
}

/// Whether the `(n, sigma)` eigenfunction decays along both asymptotes of the
/// upward U-contour.
///
/// The eigenfunctions behave as `x^a exp(iZx / (2(a+n)))` with `a = L+1` on the
/// plus branch and `a = -L` on the minus branch, and `2(a+n) = sigma * den`.
/// Along `x ~ i|s|` this decays iff `Z * sigma * den > 0`. The closed form
/// lists every `(n, sigma)`, but only these levels are eigenvalues of the
/// operator on this contour; the others need the contour mirrored (or `Z`
/// reversed).
pub fn normalizable_on_ushaped(z: f64, l: f64, n: u32, sigma: Branch) -> bool {
    z * f64::from(sigma.sign()) * denominator(l, n, sigma) > 0.0
}

/// A `(n, sigma)` pair whose denominator vanished.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedLevel {
    pub n: u32,
    pub sigma: i8,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumTable {
    /// Sorted by energy ascending, ties broken by `(n, sigma)`.
    pub levels: Vec<Level>,
    pub skipped: Vec<SkippedLevel>,
}

fn by_energy(a: &Level, b: &Level) -> Ordering {
    a.energy
        .total_cmp(&b.energy)
        .then(a.n.cmp(&b.n))
        .then(a.sigma.cmp(&b.sigma))
}

pub fn spectrum_table(z: f64, l: f64, n_max: u32, mass: MassSign) -> SpectrumTable {
    let mut table = SpectrumTable::default();
    for n in 0..=n_max {
        for sigma in Branch::BOTH {
            match level(z, l, n, sigma, mass) {
                Ok(lv) => table.levels.push(lv),
                Err(e) => table.skipped.push(SkippedLevel {
                    n,
                    sigma: sigma.sign(),
                    reason: e.to_string(),
                }),
            }
        }
    }
    table.levels.sort_by(by_energy);
    table
}

/// One row of the `-kappa` versus `2L+1` sweep. `minus_kappa = None` marks a gap
/// at (or next to) a fall-to-center singularity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub two_l_plus_1: f64,
    pub n: u32,
    pub sigma: i8,
    pub minus_kappa: Option<f64>,
}

impl SweepRow {
    pub fn is_gap(&self) -> bool {
        self.minus_kappa.is_none()
    }
}

/// `-kappa_{n,sigma} = -|Z| / |2L+1 + sigma(2n+1)|` over a grid of `2L+1` values.
///
/// Rows are grouped by curve (`n` ascending, minus branch first) and follow the
/// grid order within a curve. Grid points within [`SWEEP_GAP_TOLERANCE`] of a
/// singular value become gaps, and every singular value strictly inside the
/// grid range gets an explicit gap row, even if no grid point lands on it.
pub fn figure3_data(z: f64, grid: &[f64], n_max: u32) -> Vec<SweepRow> {
    let (lo, hi) = grid
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let ascending = grid.windows(2).all(|w| w[0] <= w[1]);
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for sigma in Branch::BOTH {
            let odd = 2.0 * f64::from(n) + 1.0;
            // The plus branch never vanishes for 2L+1 > 0; the minus branch does at 2L+1 = 2n+1.
            let singular = (sigma == Branch::Minus && lo < odd && odd < hi).then_some(odd);
            let mut pending_gap = singular.filter(|s| {
                !grid.iter().any(|&v| (v - s).abs() < SWEEP_GAP_TOLERANCE)
            });
            for &v in grid {
                if let Some(s) = pending_gap {
                    if ascending && v > s {
                        rows.push(SweepRow { two_l_plus_1: s, n, sigma: sigma.sign(), minus_kappa: None });
                        pending_gap = None;
                    }
                }
                let den = v + f64::from(sigma.sign()) * odd;
                let minus_kappa = (den.abs() >= SWEEP_GAP_TOLERANCE).then(|| -z.abs() / den.abs());
                rows.push(SweepRow { two_l_plus_1: v, n, sigma: sigma.sign(), minus_kappa });
            }
            if let Some(s) = pending_gap {
                rows.push(SweepRow { two_l_plus_1: s, n, sigma: sigma.sign(), minus_kappa: None });
            }
        }
    }
    rows
}

/// `2L+1 = M0 + cos^2(alpha)` with integer `M0 >= 0` and `alpha in (0, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reparametrization {
    pub m0: u32,
    pub alpha: f64,
}

impl Reparametrization {
    pub fn new(m0: u32, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < FRAC_PI_2) {
            return Err(Error::Domain(format!(
                "residuum angle must lie in (0, pi/2), got {alpha}"
            )));
        }
        Ok(Reparametrization { m0, alpha })
    }

    pub fn from_l(l: f64) -> Result<Self> {
        let v = 2.0 * l + 1.0;
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Domain(format!("2L+1 must be positive, got {v}")));
        }
        let m0 = v.floor();
        let residuum = v - m0;
        if residuum <= 0.0 {
            return Err(Error::Domain(format!(
                "2L+1 = {v} is an integer: the residuum angle hits an excluded endpoint"
            )));
        }
        Self::new(m0 as u32, residuum.sqrt().acos())
    }

    pub fn two_l_plus_1(&self) -> f64 {
        f64::from(self.m0) + self.alpha.cos().powi(2)
    }
}

/// Ground-state energy in the compact form `-Z^2 / min(sin^2 alpha, cos^2 alpha)`.
///
/// The compact closed form, kept as written for comparison. It does not
/// agree with the minimum of [`spectrum_table`]; see [`ground_state_report`].
pub fn ground_state_compact_formula(z: f64, rep: Reparametrization) -> Result<f64> {
    if !(rep.alpha > 0.0 && rep.alpha < FRAC_PI_2) {
        return Err(Error::Domain(format!(
            "residuum angle {} is an excluded endpoint",
            rep.alpha
        )));
    }
    let (s, c) = rep.alpha.sin_cos();
    Ok(-z * z / (s * s).min(c * c))
}

/// The lowest negative-mass level found by enumerating `n <= n_max`, both branches.
pub fn ground_state_bruteforce(z: f64, l: f64, n_max: u32) -> Result<Level> {
    let table = spectrum_table(z, l, n_max, MassSign::Negative);
    table.levels.first().copied().ok_or_else(|| {
        let first = table.skipped.first().map(|s| s.reason.clone()).unwrap_or_default();
        Error::Domain(format!("no regular level for n <= {n_max}: {first}"))
    })
}

/// The compact formula side by side with the enumerated ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroundStateReport {
    pub z: f64,
    pub l: f64,
    pub m0: u32,
    pub alpha: f64,
    pub compact_formula: f64,
    pub bruteforce: f64,
    pub bruteforce_n: u32,
    pub bruteforce_sigma: i8,
    /// `-Z^2/cos^4(alpha)` for odd `M0`, `-Z^2/sin^4(alpha)` for even `M0`: the
    /// nearest odd integer to `2L+1` sits at distance `cos^2` or `sin^2`.
    pub parity_formula: f64,
    pub compact_minus_bruteforce: f64,
}

pub fn ground_state_report(z: f64, l: f64, n_max: u32) -> Result<GroundStateReport> {
    let rep = Reparametrization::from_l(l)?;
    let compact = ground_state_compact_formula(z, rep)?;
    let brute = ground_state_bruteforce(z, l, n_max)?;
    let (s, c) = rep.alpha.sin_cos();
    let nearest = if rep.m0 % 2 == 1 { c * c } else { s * s };
    let parity_formula = -z * z / (nearest * nearest);
    Ok(GroundStateReport {
        z,
        l,
        m0: rep.m0,
        alpha: rep.alpha,
        compact_formula: compact,
        bruteforce: brute.energy,
        bruteforce_n: brute.n,
        bruteforce_sigma: brute.sigma.sign(),
        parity_formula,
        compact_minus_bruteforce: compact - brute.energy,
    })
}
