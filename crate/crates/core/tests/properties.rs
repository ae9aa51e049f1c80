use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use ptspec::analytic::{
    figure3_data, ground_state_bruteforce, level, spectrum_table, Branch, Reparametrization,
};
use ptspec::contour::{angle_window, phase, Contour};
use ptspec::linalg::{Tridiagonal, TridiagonalLu};
use ptspec::model::{effective_l, is_singular_l, MassSign, Potential};
use ptspec::solver::{discretize, full_spectrum, DenseOptions, GridSpec};

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn non_integer_l() -> impl Strategy<Value = f64> {
    (0.0..4.0f64).prop_filter("integer L is singular", |l| !is_singular_l(*l) && (l - l.round()).abs() > 1e-6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn u_contour_is_pt_symmetric(eps in 0.0..3.0f64, s in -50.0..50.0f64) {
        let c = Contour::u_shaped(eps).unwrap();
        prop_assert!(c.pt_residual(s) <= 1e-12);
    }

    #[test]
    fn straight_line_is_pt_symmetric(phi in -PI..PI, s in -50.0..50.0f64) {
        let c = Contour::straight_line(phi).unwrap();
        prop_assert!(c.pt_residual(s) <= 1e-12 * (1.0 + s.abs()));
    }

    #[test]
    fn u_contour_has_unit_speed(eps in 0.01..3.0f64, s in -20.0..20.0f64) {
        let (dx, _) = Contour::u_shaped(eps).unwrap().derivatives(s);
        prop_assert!((dx.norm() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn derivatives_match_central_differences(eps in 0.1..3.0f64, s in -20.0..20.0f64) {
        let c = Contour::u_shaped(eps).unwrap();
        let j = c.junction().unwrap();
        let d = 1e-5;
        prop_assume!((s.abs() - j).abs() > 1e-3);
        let (dx, ddx) = c.derivatives(s);
        let fd1 = (c.evaluate(s + d) - c.evaluate(s - d)) / (2.0 * d);
        let d2 = 1e-4;
        let fd2 = (c.evaluate(s + d2) - 2.0 * c.evaluate(s) + c.evaluate(s - d2)) / (d2 * d2);
        prop_assert!((dx - fd1).norm() <= 1e-8);
        prop_assert!((ddx - fd2).norm() <= 1e-4 / eps);
    }

    #[test]
    fn u_contour_avoids_the_cut(eps in 0.01..3.0f64, s in -20.0..20.0f64) {
        // the branch cut is the closed upper imaginary half-axis
        let x = Contour::u_shaped(eps).unwrap().evaluate(s);
        prop_assert!(x.re != 0.0 || x.im < 0.0);
        prop_assert!(x.norm() >= eps * (1.0 - 1e-12));
    }

    #[test]
    fn phase_is_in_range_and_consistent(x in complex()) {
        prop_assume!(x.norm() > 1e-9);
        let p = phase(x);
        prop_assert!(p > -1.5 * PI && p <= FRAC_PI_2);
        prop_assert!((Complex64::from_polar(x.norm(), p) - x).norm() <= 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn angle_window_geometry(delta in -0.99..5.0f64, branch in 0i32..4) {
        let w = angle_window(delta, branch).unwrap();
        prop_assert!((w.optimal - 0.5 * (w.lower + w.upper)).abs() <= 1e-12);
        prop_assert!((w.upper - w.lower - PI / (2.0 + 2.0 * delta)).abs() <= 1e-12);
        prop_assert!(w.contains(w.optimal));
    }

    #[test]
    fn bender_boettcher_is_pt_symmetric(delta in -0.5..2.0f64, x in complex()) {
        prop_assume!(x.norm() > 1e-6 && x.re != 0.0);
        let v = Potential::bender_boettcher(delta).unwrap();
        let mirrored = -x.conj();
        let a = v.evaluate(mirrored).unwrap();
        let b = v.evaluate(x).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-10 * (1.0 + b.norm()));
    }

    #[test]
    fn effective_l_solves_the_quadratic(ell in 0u32..6, f in -2.0..10.0f64) {
        match effective_l(ell, f) {
            Ok(am) => {
                let lhs = am.l * (am.l + 1.0);
                let rhs = f64::from(ell) * f64::from(ell + 1) + f;
                prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
                prop_assert!(am.l > -0.5);
            }
            Err(_) => {
                let half = f64::from(ell) + 0.5;
                let disc = half * half + f;
                prop_assert!(disc <= 0.0 || is_singular_l(-0.5 + disc.max(0.0).sqrt()));
            }
        }
    }

    #[test]
    fn mass_sign_fixes_level_sign(z in -5.0..5.0f64, l in non_integer_l(), n in 0u32..20, plus in any::<bool>()) {
        prop_assume!(z.abs() > 1e-6);
        let sigma = if plus { Branch::Plus } else { Branch::Minus };
        if let (Ok(p), Ok(m)) = (level(z, l, n, sigma, MassSign::Positive), level(z, l, n, sigma, MassSign::Negative)) {
            prop_assert!(p.energy > 0.0 && m.energy < 0.0);
            prop_assert_eq!(p.energy, -m.energy);
        }
    }

    #[test]
    fn levels_scale_with_z_squared(z in 0.1..5.0f64, l in non_integer_l(), n in 0u32..10) {
        for sigma in Branch::BOTH {
            let a = level(z, l, n, sigma, MassSign::Negative).unwrap();
            let b = level(2.0 * z, l, n, sigma, MassSign::Negative).unwrap();
            prop_assert!((b.energy - 4.0 * a.energy).abs() <= 1e-12 * b.energy.abs());
        }
    }

    #[test]
    fn bruteforce_is_the_table_minimum(z in -5.0..5.0f64, l in non_integer_l(), n_max in 0u32..30) {
        let table = spectrum_table(z, l, n_max, MassSign::Negative);
        let g = ground_state_bruteforce(z, l, n_max).unwrap();
        let min = table.levels.iter().map(|lv| lv.energy).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(g.energy, min);
        prop_assert!(table.levels.windows(2).all(|w| w[0].energy <= w[1].energy));
    }

    #[test]
    fn reparametrization_round_trips(l in non_integer_l()) {
        prop_assume!(((2.0 * l + 1.0) - (2.0 * l + 1.0).round()).abs() > 1e-9);
        let rep = Reparametrization::from_l(l).unwrap();
        prop_assert!(rep.alpha > 0.0 && rep.alpha < FRAC_PI_2);
        prop_assert!((rep.two_l_plus_1() - (2.0 * l + 1.0)).abs() <= 1e-12 * (2.0 * l + 1.0));
    }

    #[test]
    fn figure3_curves_are_complete(z in 0.1..3.0f64, pts in 20usize..200, n_max in 0u32..6) {
        let grid: Vec<f64> = (0..pts).map(|k| 0.05 + k as f64 * 5.95 / (pts - 1) as f64).collect();
        let rows = figure3_data(z, &grid, n_max);
        let mut curves: Vec<(u32, i8)> = rows.iter().map(|r| (r.n, r.sigma)).collect();
        curves.dedup();
        prop_assert_eq!(curves.len(), 2 * (n_max as usize + 1));
        prop_assert!(rows.iter().filter_map(|r| r.minus_kappa).all(|k| k < 0.0));
        for r in rows.iter().filter(|r| r.is_gap()) {
            prop_assert_eq!(r.sigma, -1);
            prop_assert!((r.two_l_plus_1 - (2.0 * f64::from(r.n) + 1.0)).abs() < 1e-6);
        }
    }

    #[test]
    fn tridiagonal_lu_solves(
        n in 1usize..40,
        seed in prop::collection::vec(complex(), 120),
    ) {
        let sub: Vec<Complex64> = seed[..n - 1].to_vec();
        let sup: Vec<Complex64> = seed[40..40 + n - 1].to_vec();
        let diag: Vec<Complex64> = seed[80..80 + n].iter().map(|d| d * 4.0).collect();
        let a = Tridiagonal::new(sub, diag, sup).unwrap();
        let x_true: Vec<Complex64> = (0..n).map(|i| Complex64::new(i as f64, 1.0 - i as f64)).collect();
        let b = a.matvec(&x_true);
        let lu = TridiagonalLu::factor(&a);
        prop_assume!(lu.perturbed_pivots == 0);
        let x = lu.solve(&b);
        let r = a.matvec(&x);
        let err: f64 = r.iter().zip(&b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        let scale = a.norm_inf() * x.iter().map(|z| z.norm()).fold(1.0, f64::max);
        prop_assert!(err <= 1e-10 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discretized_ck_is_pt_symmetric(
        eps in 0.2..2.0f64,
        z in -3.0..3.0f64,
        l in non_integer_l(),
        n in 16usize..600,
        half in 5.0..30.0f64,
        negative in any::<bool>(),
    ) {
        let mass = if negative { MassSign::Negative } else { MassSign::Positive };
        let op = discretize(
            &Contour::u_shaped(eps).unwrap(),
            &Potential::coulomb_kratzer(z, 0.0).unwrap(),
            l,
            mass,
            &GridSpec::new(half, n).unwrap().unaligned(),
        ).unwrap();
        prop_assert!(op.pt_residual() <= 1e-12 * op.matrix.norm_inf().max(1.0));
        prop_assert_eq!(op.matrix.sub.len(), n - 1);
    }

    #[test]
    fn dense_spectrum_is_conjugation_closed(
        eps in 0.5..2.0f64,
        z in -2.0..2.0f64,
        l in non_integer_l(),
        n in 16usize..80,
    ) {
        let op = discretize(
            &Contour::u_shaped(eps).unwrap(),
            &Potential::coulomb_kratzer(z, 0.0).unwrap(),
            l,
            MassSign::Negative,
            &GridSpec::new(8.0, n).unwrap().unaligned(),
        ).unwrap();
        let e = full_spectrum(&op.matrix, DenseOptions::default()).unwrap();
        prop_assert_eq!(e.len(), n);
        let scale = op.matrix.norm_inf();
        for v in &e {
            let gap = e.iter().map(|w| (w - v.conj()).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(gap <= 1e-8 * scale, "{} has no conjugate partner (gap {:e})", v, gap);
        }
    }
}
