//! Potentials, mass configuration, effective angular momentum and the
//! asymptotic classification of free motion along a contour.
//!
//! Internal units: `hbar = 1` and `|m| = 1/2`, so `2|m|/hbar^2 = 1`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contour::{phase, Contour};
use crate::error::{Error, Result};

/// Band around integers inside which `L` counts as singular.
pub const SINGULAR_L_TOLERANCE: f64 = 1e-12;

const ANGLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Potential {
    /// `V(x) = iZ/x + F/x^2`.
    CoulombKratzer { z: f64, f: f64 },
    /// `V(x) = x^2 (ix)^(4 delta)`.
    BenderBoettcher { delta: f64 },
}

impl Potential {
    pub fn coulomb_kratzer(z: f64, f: f64) -> Result<Self> {
        if !(z.is_finite() && f.is_finite()) {
            return Err(Error::InvalidInput(format!("couplings must be finite, got Z = {z}, F = {f}")));
        }
        Ok(Potential::CoulombKratzer { z, f })
    }

    pub fn bender_boettcher(delta: f64) -> Result<Self> {
        if !delta.is_finite() || delta < -0.5 {
            return Err(Error::InvalidInput(format!("delta must be >= -1/2, got {delta}")));
        }
        Ok(Potential::BenderBoettcher { delta })
    }

    /// The harmonic oscillator `V = x^2`.
    pub fn oscillator() -> Self {
        Potential::BenderBoettcher { delta: 0.0 }
    }

    pub fn evaluate(&self, x: Complex64) -> Result<Complex64> {
        match *self {
            Potential::CoulombKratzer { z, f } => {
                if x == Complex64::new(0.0, 0.0) {
                    return Err(Error::SingularPoint { re: x.re, im: x.im });
                }
                let inv = x.inv();
                Ok(Complex64::new(0.0, z) * inv + f * inv * inv)
            }
            Potential::BenderBoettcher { delta } => {
                let exponent = 4.0 * delta;
                if x == Complex64::new(0.0, 0.0) {
                    return if exponent + 2.0 > 0.0 {
                        Ok(Complex64::new(0.0, 0.0))
                    } else {
                        Err(Error::SingularPoint { re: 0.0, im: 0.0 })
                    };
                }
                if exponent == 0.0 {
                    return Ok(x * x);
                }
                // With arg(x) in (-3pi/2, pi/2], arg(ix) = arg(x) + pi/2 lies in (-pi, pi].
                let ix_phase = phase(x) + FRAC_PI_2;
                let ix_power = Complex64::from_polar(x.norm().powf(exponent), exponent * ix_phase);
                Ok(x * x * ix_power)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MassSign {
    #[serde(alias = "pos")]
    Positive,
    #[serde(alias = "neg")]
    Negative,
}

impl MassSign {
    pub fn as_f64(self) -> f64 {
        match self {
            MassSign::Positive => 1.0,
            MassSign::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            MassSign::Positive => MassSign::Negative,
            MassSign::Negative => MassSign::Positive,
        }
    }
}

/// Bare mass: its sign and `scale = 2|m|/hbar^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassConfig {
    pub sign: MassSign,
    pub scale: f64,
}

impl MassConfig {
    pub fn new(sign: MassSign, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidInput(format!("mass scale must be > 0, got {scale}")));
        }
        Ok(MassConfig { sign, scale })
    }

    /// Unit-scale mass in internal units.
    pub fn unit(sign: MassSign) -> Self {
        MassConfig { sign, scale: 1.0 }
    }

    /// The signed bare mass with `hbar = 1`.
    pub fn bare_mass(&self) -> f64 {
        self.sign.as_f64() * self.scale / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularMomentum {
    pub ell: u32,
    pub l: f64,
}

/// Solves `L(L+1) = ell(ell+1) + F` on the root continuously connected to `L = ell`.
pub fn effective_l(ell: u32, f: f64) -> Result<AngularMomentum> {
    let half = f64::from(ell) + 0.5;
    let discriminant = half * half + f;
    if !(discriminant > 0.0) {
        return Err(Error::FallToCenter { discriminant });
    }
    let l = -0.5 + discriminant.sqrt();
    if is_singular_l(l) {
        return Err(Error::SingularL { l });
    }
    Ok(AngularMomentum { ell, l })
}

pub fn is_singular_l(l: f64) -> bool {
    (l - l.round()).abs() < SINGULAR_L_TOLERANCE
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

/// Complex effective mass `e^{+-2i phi} m` seen along the right/left asymptote.
pub fn effective_mass(mass: MassConfig, phi: f64, side: Side) -> Complex64 {
    let angle = match side {
        Side::Right => 2.0 * phi,
        Side::Left => -2.0 * phi,
    };
    Complex64::from_polar(1.0, angle) * mass.bare_mass()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Behavior {
    /// Normalizable asymptotics: a bound-state candidate.
    DecayingPair,
    /// Oscillating asymptotics: the energy belongs to the continuum.
    PlaneWavePair,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticClassification {
    pub energy_sign: i8,
    pub behavior: Behavior,
    /// `k` for `E = k^2` or `kappa` for `E = -kappa^2`.
    pub wavenumber: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Asymptotes {
    /// Both asymptotes run along the real axis.
    Real,
    /// Both asymptotes run parallel to the upper imaginary half-axis.
    UpperImaginary,
}

fn asymptotes(contour: &Contour) -> Result<Asymptotes> {
    match *contour {
        Contour::UShaped { .. } => Ok(Asymptotes::UpperImaginary),
        Contour::StraightLine { phi } if phi.abs() <= ANGLE_TOLERANCE => Ok(Asymptotes::Real),
        Contour::StraightLine { phi } if (phi - FRAC_PI_2).abs() <= ANGLE_TOLERANCE => {
            Ok(Asymptotes::UpperImaginary)
        }
        Contour::StraightLine { phi } => Err(Error::UnsupportedGeometry(format!(
            "asymptotic analysis covers phi = 0 and phi = pi/2 only, got phi = {phi}"
        ))),
    }
}

/// Sign of the kinetic energy along the asymptotes: `+1` when it is `-d^2/ds^2`
/// (bounded below), `-1` when it is `+d^2/ds^2`.
fn asymptotic_kinetic_sign(mass: MassSign, contour: &Contour) -> Result<f64> {
    let geometric = match asymptotes(contour)? {
        Asymptotes::Real => 1.0,
        // d^2/dx^2 = -d^2/ds^2 along x ~ i|s|
        Asymptotes::UpperImaginary => -1.0,
    };
    Ok(geometric * mass.as_f64())
}

/// Free-motion solution pair at energy `E` far out along the contour.
pub fn classify_asymptotics(
    mass: MassConfig,
    contour: &Contour,
    energy: f64,
) -> Result<AsymptoticClassification> {
    let kinetic = asymptotic_kinetic_sign(mass.sign, contour)?;
    if !energy.is_finite() || energy == 0.0 {
        return Err(Error::Domain(format!(
            "energy must be finite and nonzero for classification, got {energy}"
        )));
    }
    // With kinetic sign t the asymptotic equation is -t psi'' = E psi (in s),
    // so t*E < 0 gives real exponentials and t*E > 0 gives plane waves.
    let behavior = if kinetic * energy < 0.0 {
        Behavior::DecayingPair
    } else {
        Behavior::PlaneWavePair
    };
    Ok(AsymptoticClassification {
        energy_sign: if energy > 0.0 { 1 } else { -1 },
        behavior,
        wavenumber: energy.abs().sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub bounded_below: bool,
    pub narrative: String,
}

/// Whether the continuum along the asymptotes is bounded from below.
pub fn stability_verdict(mass: MassConfig, contour: &Contour) -> Result<StabilityVerdict> {
    let kinetic = asymptotic_kinetic_sign(mass.sign, contour)?;
    let geometry = match asymptotes(contour)? {
        Asymptotes::Real => "real-line asymptotes",
        Asymptotes::UpperImaginary => "asymptotes parallel to the upper imaginary half-axis",
    };
    let mass_word = match mass.sign {
        MassSign::Positive => "positive",
        MassSign::Negative => "negative",
    };
    let (bounded_below, narrative) = if kinetic > 0.0 {
        (
            true,
            format!(
                "{mass_word} bare mass with {geometry}: the asymptotic kinetic term is -d^2/ds^2, \
                 plane waves exist only at E > 0 and bound states sit at E < 0; the spectrum is \
                 bounded from below and the system is stable"
            ),
        )
    } else {
        (
            false,
            format!(
                "{mass_word} bare mass with {geometry}: the asymptotic kinetic term is +d^2/ds^2, \
                 plane waves exist at every E < 0, so the continuum is unbounded from below and \
                 the system is unstable with respect to small perturbations"
            ),
        )
    };
    Ok(StabilityVerdict { bounded_below, narrative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ushaped() -> Contour {
        Contour::u_shaped(1.0).unwrap()
    }

    #[test]
    fn coulomb_kratzer_examples() {
        let v = Potential::coulomb_kratzer(1.0, 0.0).unwrap();
        let value = v.evaluate(Complex64::new(0.0, -1.0)).unwrap();
        assert_abs_diff_eq!(value.re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(value.im, 0.0, epsilon = 1e-15);

        let v = Potential::coulomb_kratzer(0.0, 2.0).unwrap();
        assert_eq!(v.evaluate(Complex64::new(1.0, 0.0)).unwrap(), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn coulomb_kratzer_singular_at_origin() {
        let v = Potential::coulomb_kratzer(1.0, 0.5).unwrap();
        assert!(matches!(
            v.evaluate(Complex64::new(0.0, 0.0)),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn oscillator_on_imaginary_axis() {
        let v = Potential::oscillator();
        let value = v.evaluate(Complex64::new(0.0, 3.0)).unwrap();
        assert_abs_diff_eq!(value.re, -9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(value.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn bender_boettcher_cubic_is_ix_cubed() {
        // delta = 1/4: x^2 (ix) = i x^3
        let v = Potential::bender_boettcher(0.25).unwrap();
        for x in [Complex64::new(1.3, -0.4), Complex64::new(-2.0, 0.7), Complex64::new(0.2, -3.0)] {
            let expected = Complex64::new(0.0, 1.0) * x * x * x;
            assert!((v.evaluate(x).unwrap() - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn bender_boettcher_uses_cut_up_convention() {
        // (ix)^2 with delta = 1/2 is a polynomial; check the fractional delta = 1/8
        // case against the explicit principal power of ix on both sides of the cut.
        let v = Potential::bender_boettcher(0.125).unwrap();
        let x = Complex64::new(-1.0, 1e-3);
        let ix: Complex64 = Complex64::new(0.0, 1.0) * x;
        let expected = x * x * ix.powf(0.5);
        assert!((v.evaluate(x).unwrap() - expected).norm() < 1e-12);
    }

    #[test]
    fn effective_l_examples() {
        assert!(matches!(effective_l(0, 0.0), Err(Error::SingularL { l }) if l == 0.0));
        assert!(matches!(effective_l(0, 2.0), Err(Error::SingularL { l }) if (l - 1.0).abs() < 1e-12));
        let am = effective_l(0, 0.75).unwrap();
        assert_abs_diff_eq!(am.l, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn effective_l_fall_to_center() {
        assert!(matches!(effective_l(0, -0.25), Err(Error::FallToCenter { .. })));
        assert!(matches!(effective_l(1, -3.0), Err(Error::FallToCenter { .. })));
        assert!(effective_l(1, -1.5).is_ok());
    }

    #[test]
    fn effective_mass_examples() {
        let m = MassConfig::unit(MassSign::Positive);
        assert_eq!(effective_mass(m, 0.0, Side::Right), Complex64::new(0.5, 0.0));
        assert_eq!(effective_mass(m, 0.0, Side::Left), Complex64::new(0.5, 0.0));

        let rotated = effective_mass(m, FRAC_PI_2, Side::Right);
        assert_abs_diff_eq!(rotated.re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rotated.im, 0.0, epsilon = 1e-15);

        let neg = MassConfig::unit(MassSign::Negative);
        let restored = effective_mass(neg, FRAC_PI_2, Side::Left);
        assert_abs_diff_eq!(restored.re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(restored.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn classification_examples() {
        let pos = MassConfig::unit(MassSign::Positive);
        let neg = MassConfig::unit(MassSign::Negative);
        let c = ushaped();
        assert_eq!(classify_asymptotics(pos, &c, -1.0).unwrap().behavior, Behavior::PlaneWavePair);
        assert_eq!(classify_asymptotics(pos, &c, 1.0).unwrap().behavior, Behavior::DecayingPair);
        assert_eq!(classify_asymptotics(neg, &c, -1.0).unwrap().behavior, Behavior::DecayingPair);
        assert_eq!(classify_asymptotics(neg, &c, 1.0).unwrap().behavior, Behavior::PlaneWavePair);

        let line = Contour::straight_line(0.0).unwrap();
        let bound = classify_asymptotics(pos, &line, -4.0).unwrap();
        assert_eq!(bound.behavior, Behavior::DecayingPair);
        assert_eq!(bound.energy_sign, -1);
        assert_eq!(bound.wavenumber, 2.0);
        assert_eq!(classify_asymptotics(pos, &line, 4.0).unwrap().behavior, Behavior::PlaneWavePair);
    }

    #[test]
    fn classification_rejects_tilted_lines_and_threshold() {
        let pos = MassConfig::unit(MassSign::Positive);
        let tilted = Contour::straight_line(0.3).unwrap();
        assert!(matches!(
            classify_asymptotics(pos, &tilted, -1.0),
            Err(Error::UnsupportedGeometry(_))
        ));
        assert!(matches!(classify_asymptotics(pos, &ushaped(), 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn stability_truth_table() {
        let pos = MassConfig::unit(MassSign::Positive);
        let neg = MassConfig::unit(MassSign::Negative);
        assert!(!stability_verdict(pos, &ushaped()).unwrap().bounded_below);
        assert!(stability_verdict(neg, &ushaped()).unwrap().bounded_below);
        let line = Contour::straight_line(0.0).unwrap();
        assert!(stability_verdict(pos, &line).unwrap().bounded_below);
        assert!(stability_verdict(pos, &ushaped()).unwrap().narrative.contains("unstable"));
    }

    #[test]
    fn mass_config_validation() {
        assert!(MassConfig::new(MassSign::Negative, 0.0).is_err());
        assert_eq!(MassConfig::new(MassSign::Negative, 2.0).unwrap().bare_mass(), -1.0);
    }
}
