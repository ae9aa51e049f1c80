//! Eigenvalues of a complex upper-Hessenberg matrix by single-shift QR.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major square matrix in upper-Hessenberg form.
struct Hessenberg {
    n: usize,
    a: Vec<Complex64>,
}

impl Hessenberg {
    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.a[i * self.n + j]
    }
}

/// Rotation `G = [[c, s], [-conj(s), c]]` with real `c` such that `G [x; y] = [r; 0]`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

/// Eigenvalue of the 2x2 block `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (e1, e2) = (mean + disc, mean - disc);
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// All eigenvalues of an `n x n` row-major upper-Hessenberg matrix.
///
/// Entries below the first subdiagonal are ignored. Fails with
/// `ConvergenceFailure` after `max_sweeps` QR sweeps in total.
pub fn hessenberg_eigenvalues(n: usize, a: Vec<Complex64>, max_sweeps: usize) -> Result<Vec<Complex64>> {
    assert_eq!(a.len(), n * n, "dimension mismatch");
    let mut h = Hessenberg { n, a };
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let norm = h.a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let small = f64::MIN_POSITIVE * (n as f64) / f64::EPSILON;
    let mut rot = vec![(0.0, Complex64::new(0.0, 0.0)); n];
    let mut hi = n - 1;
    let mut its = 0usize;
    let mut sweeps = 0usize;

    loop {
        // find the start of the unreduced block ending at `hi`
        let mut lo = hi;
        while lo > 0 {
            let sub = h.at(lo, lo - 1).norm();
            let mut scale = h.at(lo, lo).norm() + h.at(lo - 1, lo - 1).norm();
            if scale == 0.0 {
                scale = norm;
            }
            if sub <= f64::EPSILON * scale || sub < small {
                *h.at_mut(lo, lo - 1) = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eig[hi] = h.at(hi, hi);
            if hi == 0 {
                break;
            }
            hi -= 1;
            its = 0;
            continue;
        }

        sweeps += 1;
        its += 1;
        if sweeps > max_sweeps {
            return Err(Error::ConvergenceFailure {
                operation: "hessenberg_qr",
                iterations: max_sweeps,
                residual: h.at(hi, hi - 1).norm(),
            });
        }

        let shift = if its % 10 == 0 {
            // exceptional shift to break cycles
            let mut s = h.at(hi, hi - 1).norm();
            if hi >= 2 {
                s += h.at(hi - 1, hi - 2).norm();
            }
            h.at(hi, hi) + Complex64::new(0.75 * s, 0.0)
        } else {
            wilkinson_shift(h.at(hi - 1, hi - 1), h.at(hi - 1, hi), h.at(hi, hi - 1), h.at(hi, hi))
        };

        for k in lo..=hi {
            *h.at_mut(k, k) -= shift;
        }
        // H - mu I = QR, rows first
        for k in lo..hi {
            let (c, s) = givens(h.at(k, k), h.at(k + 1, k));
            rot[k] = (c, s);
            for j in k..=hi {
                let x = h.at(k, j);
                let y = h.at(k + 1, j);
                *h.at_mut(k, j) = x * c + s * y;
                *h.at_mut(k + 1, j) = -s.conj() * x + y * c;
            }
        }
        // then RQ + mu I
        for k in lo..hi {
            let (c, s) = rot[k];
            for i in lo..=(k + 1) {
                let x = h.at(i, k);
                let y = h.at(i, k + 1);
                *h.at_mut(i, k) = x * c + y * s.conj();
                *h.at_mut(i, k + 1) = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            *h.at_mut(k, k) += shift;
        }
    }
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn givens_annihilates() {
        for (x, y) in [(c(1.0, 2.0), c(-3.0, 0.5)), (c(0.0, 0.0), c(1.0, 1.0)), (c(2.0, 0.0), c(0.0, 0.0))] {
            let (cs, s) = givens(x, y);
            let lower = -s.conj() * x + y * cs;
            assert!(lower.norm() < 1e-15);
            assert!((cs * cs + s.norm_sqr() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn two_by_two_symmetric() {
        let e = sorted(hessenberg_eigenvalues(2, vec![c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 60).unwrap());
        assert!((e[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((e[1] - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rotation_generator_has_imaginary_pair() {
        let e = sorted(hessenberg_eigenvalues(2, vec![c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], 60).unwrap());
        assert!((e[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((e[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn companion_matrix_roots() {
        // companion matrix of (z-1)(z-2)(z-3)(z-4) = z^4 - 10z^3 + 35z^2 - 50z + 24
        let coeffs = [10.0, -35.0, 50.0, -24.0];
        let n = 4;
        let mut a = vec![c(0.0, 0.0); n * n];
        for (j, &v) in coeffs.iter().enumerate() {
            a[j] = c(v, 0.0);
        }
        for i in 1..n {
            a[i * n + i - 1] = c(1.0, 0.0);
        }
        let e = sorted(hessenberg_eigenvalues(n, a, 120).unwrap());
        for (k, z) in e.iter().enumerate() {
            assert!((z - c(k as f64 + 1.0, 0.0)).norm() < 1e-10, "{z}");
        }
    }

    #[test]
    fn upper_triangular_is_immediate() {
        let a = vec![c(1.0, 1.0), c(5.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0)];
        let e = sorted(hessenberg_eigenvalues(2, a, 1).unwrap());
        assert_eq!(e, vec![c(-2.0, 0.0), c(1.0, 1.0)]);
    }

    #[test]
    fn sweep_cap_is_enforced() {
        let a = vec![c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let err = hessenberg_eigenvalues(2, a, 0).unwrap_err();
        assert!(matches!(err, Error::ConvergenceFailure { operation: "hessenberg_qr", .. }));
    }
}
