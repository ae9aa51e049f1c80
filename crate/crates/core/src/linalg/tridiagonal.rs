use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex tridiagonal matrix stored by diagonals.
///
/// `sub[i] = A[i+1][i]`, `diag[i] = A[i][i]`, `sup[i] = A[i][i+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub sub: Vec<Complex64>,
    pub diag: Vec<Complex64>,
    pub sup: Vec<Complex64>,
}

impl Tridiagonal {
    pub fn new(sub: Vec<Complex64>, diag: Vec<Complex64>, sup: Vec<Complex64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        if sub.len() != n - 1 || sup.len() != n - 1 {
            return Err(Error::InvalidInput(format!(
                "off-diagonals must have length {}, got sub {} and sup {}",
                n - 1,
                sub.len(),
                sup.len()
            )));
        }
        Ok(Tridiagonal { sub, diag, sup })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i == j {
            self.diag[i]
        } else if i == j + 1 {
            self.sub[j]
        } else if j == i + 1 {
            self.sup[i]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(v.len(), n, "dimension mismatch");
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.sub[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.sup[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut row = self.diag[i].norm();
                if i > 0 {
                    row += self.sub[i - 1].norm();
                }
                if i + 1 < n {
                    row += self.sup[i].norm();
                }
                row
            })
            .fold(0.0, f64::max)
    }

    pub fn shifted(&self, shift: Complex64) -> Tridiagonal {
        Tridiagonal {
            sub: self.sub.clone(),
            diag: self.diag.iter().map(|d| d - shift).collect(),
            sup: self.sup.clone(),
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut a = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            a[i * n + i] = self.diag[i];
            if i + 1 < n {
                a[i * n + i + 1] = self.sup[i];
                a[(i + 1) * n + i] = self.sub[i];
            }
        }
        a
    }

    /// Largest deviation from `A[i][j] = conj(A[n-1-i][n-1-j])` over the band.
    pub fn pt_reflection_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            worst = worst.max((self.diag[i] - self.diag[n - 1 - i].conj()).norm());
        }
        for i in 0..n - 1 {
            // A[i+1][i] mirrors to A[n-2-i][n-1-i], a superdiagonal entry.
            worst = worst.max((self.sub[i] - self.sup[n - 2 - i].conj()).norm());
        }
        worst
    }

    /// If the matrix is similar to a real symmetric tridiagonal matrix (real
    /// diagonal, `sub[i] * sup[i]` real and nonnegative), return that matrix's
    /// diagonal and off-diagonal.
    pub(crate) fn symmetrizable(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let scale = self.norm_inf().max(f64::MIN_POSITIVE);
        let tol = 64.0 * f64::EPSILON * scale;
        if self.diag.iter().any(|d| d.im.abs() > tol) {
            return None;
        }
        let mut off = Vec::with_capacity(self.sub.len());
        for (l, u) in self.sub.iter().zip(&self.sup) {
            let p = l * u;
            if p.im.abs() > tol * scale || p.re < -tol * scale {
                return None;
            }
            off.push(p.re.max(0.0).sqrt());
        }
        Some((self.diag.iter().map(|d| d.re).collect(), off))
    }
}

/// LU factorization with partial pivoting of a tridiagonal matrix, in the
/// LAPACK `gttrf` layout: `U` has a second superdiagonal `du2` from row swaps.
#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    dl: Vec<Complex64>,
    d: Vec<Complex64>,
    du: Vec<Complex64>,
    du2: Vec<Complex64>,
    swapped: Vec<bool>,
    /// Number of zero pivots that were replaced by a tiny perturbation.
    pub perturbed_pivots: usize,
}

impl TridiagonalLu {
    /// Factorizes `a`. An exactly singular pivot is replaced by `eps * ||a||`,
    /// which is what inverse iteration wants when the shift hits an eigenvalue.
    pub fn factor(a: &Tridiagonal) -> Self {
        let n = a.dim();
        let mut dl = a.sub.clone();
        let mut d = a.diag.clone();
        let mut du = a.sup.clone();
        let mut du2 = vec![Complex64::new(0.0, 0.0); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let tiny = Complex64::new(f64::EPSILON * a.norm_inf().max(f64::MIN_POSITIVE), 0.0);
        let mut perturbed = 0;

        for i in 0..n.saturating_sub(1) {
            if d[i].norm() >= dl[i].norm() {
                if d[i] == Complex64::new(0.0, 0.0) {
                    // both d[i] and dl[i] vanish: column is already eliminated
                    d[i] = tiny;
                    perturbed += 1;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == Complex64::new(0.0, 0.0) {
            d[n - 1] = tiny;
            perturbed += 1;
        }
        TridiagonalLu { dl, d, du, du2, swapped, perturbed_pivots: perturbed }
    }

    /// Solves `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.d.len();
        assert_eq!(b.len(), n, "dimension mismatch");
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> Tridiagonal {
        Tridiagonal::new(
            vec![c(3.0, -1.0), c(0.5, 2.0), c(-4.0, 0.0)],
            vec![c(0.1, 0.0), c(1.0, 1.0), c(-2.0, 0.5), c(0.3, -0.2)],
            vec![c(1.0, 0.0), c(0.0, -2.0), c(1.5, 1.5)],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Tridiagonal::new(vec![], vec![], vec![]).is_err());
        assert!(Tridiagonal::new(vec![c(1.0, 0.0)], vec![c(1.0, 0.0)], vec![]).is_err());
    }

    #[test]
    fn lu_solves_with_pivoting() {
        // small leading pivot forces row swaps
        let a = sample();
        let x_true = vec![c(1.0, 2.0), c(-1.0, 0.0), c(0.5, -0.5), c(2.0, 1.0)];
        let b = a.matvec(&x_true);
        let x = TridiagonalLu::factor(&a).solve(&b);
        for (u, v) in x.iter().zip(&x_true) {
            assert!((u - v).norm() < 1e-13);
        }
    }

    #[test]
    fn lu_handles_one_by_one() {
        let a = Tridiagonal::new(vec![], vec![c(2.0, 2.0)], vec![]).unwrap();
        let x = TridiagonalLu::factor(&a).solve(&[c(4.0, 0.0)]);
        assert!((x[0] - c(1.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn singular_pivot_is_perturbed() {
        let a = Tridiagonal::new(vec![c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0)]).unwrap();
        let lu = TridiagonalLu::factor(&a);
        assert_eq!(lu.perturbed_pivots, 1);
        assert!(lu.solve(&[c(1.0, 0.0), c(0.0, 0.0)]).iter().all(|z| z.is_finite()));
    }

    #[test]
    fn dense_copy_and_norm() {
        let a = sample();
        let dense = a.to_dense();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(dense[i * 4 + j], a.get(i, j));
            }
        }
        let row1 = c(3.0, -1.0).norm() + c(1.0, 1.0).norm() + 2.0;
        assert!(a.norm_inf() >= row1);
    }

    #[test]
    fn symmetrizable_detects_similarity() {
        let a = Tridiagonal::new(vec![c(4.0, 0.0)], vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(1.0, 0.0)]).unwrap();
        let (d, e) = a.symmetrizable().unwrap();
        assert_eq!(d, vec![1.0, 2.0]);
        assert_eq!(e, vec![2.0]);
        assert!(sample().symmetrizable().is_none());
    }
}
