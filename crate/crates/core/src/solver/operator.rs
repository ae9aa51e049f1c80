use num_complex::Complex64;
use serde::Serialize;

use crate::contour::Contour;
use crate::error::{Error, Result};
use crate::linalg::Tridiagonal;
use crate::model::{effective_l, is_singular_l, MassSign, Potential};
use crate::solver::grid::{GridSpec, ResolvedGrid};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorMeta {
    pub contour: Contour,
    pub potential: Potential,
    pub l: f64,
    pub mass_sign: MassSign,
    pub grid: ResolvedGrid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedOperator {
    pub matrix: Tridiagonal,
    pub meta: OperatorMeta,
}

impl DiscretizedOperator {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn step(&self) -> f64 {
        self.meta.grid.step()
    }

    /// Deviation from the discrete PT identity `M[i][j] = conj(M[N-1-i][N-1-j])`.
    pub fn pt_residual(&self) -> f64 {
        self.matrix.pt_reflection_residual()
    }
}

/// Assembles `H = mass_sign * [-d^2/dx^2 + L(L+1)/x^2 + V(x)]` along the contour.
///
/// The kinetic term is written in divergence form,
/// `d^2/dx^2 = (1/x') d/ds (1/x') d/ds`, and discretized with `1/x'` taken at the
/// cell midpoints. For negative mass and Coulomb-Kratzer `V` this is
/// `d^2/dx^2 - L(L+1)/x^2 - iZ/x`. `V` is added as given, so a nonzero `F`
/// adds to `L(L+1)`; the combined strength must not correspond to an integer
/// effective `L`.
pub fn discretize(
    contour: &Contour,
    potential: &Potential,
    l: f64,
    mass_sign: MassSign,
    grid: &GridSpec,
) -> Result<DiscretizedOperator> {
    let resolved = grid.resolve(contour)?;
    discretize_on(contour, potential, l, mass_sign, resolved)
}

pub(crate) fn discretize_on(
    contour: &Contour,
    potential: &Potential,
    l: f64,
    mass_sign: MassSign,
    grid: ResolvedGrid,
) -> Result<DiscretizedOperator> {
    if !l.is_finite() {
        return Err(Error::InvalidInput(format!("L must be finite, got {l}")));
    }
    let centrifugal = l * (l + 1.0);
    if let Potential::CoulombKratzer { f, .. } = *potential {
        if f == 0.0 {
            if is_singular_l(l) {
                return Err(Error::SingularL { l });
            }
        } else {
            // L(L+1) + F = L'(L'+1), with the same branch convention as effective_l
            let half = l + 0.5;
            let discriminant = half * half + f;
            if !(discriminant > 0.0) {
                return Err(Error::FallToCenter { discriminant });
            }
            let combined = -0.5 + discriminant.sqrt();
            if is_singular_l(combined) {
                return Err(Error::SingularL { l: combined });
            }
        }
    }

    let h = grid.step();
    let inv_h2 = 1.0 / (h * h);
    let sign = mass_sign.as_f64();
    let nodes = grid.nodes();
    let p: Vec<Complex64> = grid.midpoints().iter().map(|&m| contour.inverse_slope(m)).collect();

    let mut diag = Vec::with_capacity(nodes.len());
    for (i, &s) in nodes.iter().enumerate() {
        let x = contour.evaluate(s);
        let q = contour.inverse_slope(s);
        let mut v = potential.evaluate(x)?;
        if centrifugal != 0.0 {
            if x == Complex64::new(0.0, 0.0) {
                return Err(Error::SingularPoint { re: 0.0, im: 0.0 });
            }
            v += centrifugal * (x * x).inv();
        }
        diag.push(sign * (q * (p[i] + p[i + 1]) * inv_h2 + v));
    }
    let n = nodes.len();
    let sup = (0..n - 1)
        .map(|i| -sign * contour.inverse_slope(nodes[i]) * p[i + 1] * inv_h2)
        .collect();
    let sub = (1..n)
        .map(|i| -sign * contour.inverse_slope(nodes[i]) * p[i] * inv_h2)
        .collect();

    Ok(DiscretizedOperator {
        matrix: Tridiagonal::new(sub, diag, sup)?,
        meta: OperatorMeta { contour: *contour, potential: *potential, l, mass_sign, grid },
    })
}

/// Operator for the negative-mass Coulomb-Kratzer problem with the effective
/// `L` of `(ell, F)`.
pub fn discretize_ck_from_ell(
    z: f64,
    ell: u32,
    f: f64,
    epsilon: f64,
    grid: &GridSpec,
) -> Result<DiscretizedOperator> {
    let am = effective_l(ell, f)?;
    discretize(
        &Contour::u_shaped(epsilon)?,
        &Potential::coulomb_kratzer(z, 0.0)?,
        am.l,
        MassSign::Negative,
        grid,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ck_operator(n: usize) -> DiscretizedOperator {
        discretize(
            &Contour::u_shaped(1.0).unwrap(),
            &Potential::coulomb_kratzer(1.0, 0.0).unwrap(),
            0.3,
            MassSign::Negative,
            &GridSpec::new(15.0, n).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn ck_operator_is_pt_symmetric() {
        for n in [16, 101, 400] {
            assert!(ck_operator(n).pt_residual() <= 1e-12);
        }
    }

    #[test]
    fn free_real_line_is_the_fd_laplacian() {
        let op = discretize(
            &Contour::straight_line(0.0).unwrap(),
            &Potential::coulomb_kratzer(0.0, 0.0).unwrap(),
            0.5,
            MassSign::Positive,
            &GridSpec::new(1.0, 16).unwrap(),
        )
        .unwrap();
        let h = op.step();
        let x0 = op.meta.grid.nodes()[0];
        let expected = 2.0 / (h * h) + 0.75 / (x0 * x0);
        assert!((op.matrix.diag[0].re - expected).abs() < 1e-9 * expected);
        assert!(op.matrix.sup.iter().all(|u| (u.re + 1.0 / (h * h)).abs() < 1e-9 && u.im == 0.0));
    }

    #[test]
    fn negative_mass_flips_the_operator() {
        let contour = Contour::u_shaped(0.5).unwrap();
        let v = Potential::coulomb_kratzer(0.7, 0.0).unwrap();
        let grid = GridSpec::new(5.0, 64).unwrap();
        let pos = discretize(&contour, &v, 0.3, MassSign::Positive, &grid).unwrap();
        let neg = discretize(&contour, &v, 0.3, MassSign::Negative, &grid).unwrap();
        for (a, b) in pos.matrix.diag.iter().zip(&neg.matrix.diag) {
            assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn errors() {
        let c = Contour::u_shaped(1.0).unwrap();
        let grid = GridSpec::new(10.0, 64).unwrap();
        let v = Potential::coulomb_kratzer(1.0, 0.0).unwrap();
        assert!(matches!(discretize(&c, &v, 1.0, MassSign::Negative, &grid), Err(Error::SingularL { .. })));
        // L(L+1) + F = 2 is L' = 1
        let vf = Potential::coulomb_kratzer(1.0, 2.0).unwrap();
        assert!(matches!(discretize(&c, &vf, 0.0, MassSign::Negative, &grid), Err(Error::SingularL { .. })));
        let flat = Contour::u_shaped(0.0).unwrap();
        assert!(matches!(discretize(&flat, &v, 0.3, MassSign::Negative, &grid), Err(Error::Geometry(_))));
        // odd N on a straight line puts a node on x = 0
        let line = Contour::straight_line(0.0).unwrap();
        let odd = GridSpec::new(10.0, 65).unwrap();
        assert!(matches!(discretize(&line, &v, 0.3, MassSign::Positive, &odd), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn ell_and_f_route_through_effective_l() {
        let grid = GridSpec::new(10.0, 64).unwrap();
        let op = discretize_ck_from_ell(1.0, 0, 0.75, 1.0, &grid).unwrap();
        assert!((op.meta.l - 0.5).abs() < 1e-15);
        assert!(discretize_ck_from_ell(1.0, 0, 0.0, 1.0, &grid).is_err());
    }
}
