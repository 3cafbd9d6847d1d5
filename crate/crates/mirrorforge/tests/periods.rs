use mirrorforge::periods::*;
use num_complex::{Complex, Complex64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Constant-term series `Σ C(2k,k)² q^{-2k-1}` of `1/(q − W)`, valid for `|q| > 4`.
fn constant_term_series(q: Complex64) -> Complex64 {
    let mut term = q.inv();
    let mut sum = c(0.0, 0.0);
    let mut k = 0f64;
    while term.norm() > 1e-18 * sum.norm().max(1e-300) && k < 20000.0 {
        sum += term;
        let r = (2.0 * k + 1.0) * (2.0 * k + 2.0) / ((k + 1.0) * (k + 1.0));
        term = term * (r * r) / (q * q);
        k += 1.0;
    }
    sum
}

fn quartic_direct(q: Complex64, t: Complex64) -> Complex64 {
    let u = t * t + 1.0 - q * t;
    u * u - t * t * 4.0
}

#[test]
fn figure_values_at_minus_two() {
    let s3 = 3f64.sqrt();
    let got = ramification_points(c(-2.0, 0.0)).values();
    for want in [c(0.0, 1.0), c(0.0, -1.0), c(-2.0 + s3, 0.0), c(-2.0 - s3, 0.0)] {
        assert!(got.iter().any(|g| (g - want).norm() < 1e-10), "{} missing from {:?}", want, got);
    }
}

#[test]
fn roots_collide_exactly_at_critical_values() {
    assert_eq!(critical_values(), vec![-4, 0, 4]);
    for q in [-4.0, 0.0, 4.0] {
        assert!(!ramification_points(c(q, 0.0)).collisions(1e-9).is_empty());
    }
    for q in [c(-3.9, 0.0), c(-0.1, 0.0), c(3.9, 0.0), c(0.0, 0.1), c(-2.0, 0.0)] {
        assert!(ramification_points(q).collisions(1e-3).is_empty(), "{}", q);
    }
}

#[test]
fn invariant_cycle_matches_constant_term_series() {
    let e = PeriodEngine::<f64>::default();
    let ab = CycleCombination::parse("a-b").unwrap();
    let four_pi = 4.0 * std::f64::consts::PI;
    let qs = [c(10.0, 0.0), c(0.0, 6.0), c(-7.0, 3.0), c(4.5, 0.1), c(-4.5, 0.2), c(-30.0, 0.0)];
    for r in e.sweep(&qs, &[ab]).unwrap() {
        let want = constant_term_series(r.q) * four_pi;
        assert!((r.value - want).norm() < 1e-9 * want.norm(), "q = {}: {} vs {}", r.q, r.value, want);
    }
}

#[test]
fn monodromy_around_minus_four_and_zero() {
    let e = PeriodEngine::<f64>::default();
    let base = c(-3.5, 0.0);
    let (a, b) = e.standard_cycles(base, Region::Real).unwrap();
    let m = e.monodromy(&circle_loop(c(-4.0, 0.0), base, 64), &[a, b]).unwrap();
    assert_eq!(m.matrix, [[1, 0], [2, 1]]);
    assert!(m.residual < 1e-6);
    let base = c(-0.5, 0.0);
    let (a, b) = e.standard_cycles(base, Region::Real).unwrap();
    let m = e.monodromy(&circle_loop(c(0.0, 0.0), base, 64), &[a, b]).unwrap();
    // Picard-Lefschetz: the cycle vanishing at 0 is fixed.
    let n = [[m.matrix[0][0] - 1, m.matrix[0][1]], [m.matrix[1][0], m.matrix[1][1] - 1]];
    assert_eq!(n[0][0] * n[0][0] + n[0][1] * n[1][0], 0);
    assert_ne!(m.matrix, [[1, 0], [0, 1]]);
}

#[test]
fn intersection_form_is_antisymmetric() {
    let e = PeriodEngine::<f64>::default();
    let [a, b, cc] = CyclePath::<f64>::reference();
    assert_eq!(e.intersection_number(&a, &b).unwrap(), -2);
    assert_eq!(e.intersection_number(&b, &a).unwrap(), 2);
    let ac = e.intersection_number(&a, &cc).unwrap();
    assert_eq!(e.intersection_number(&cc, &a).unwrap(), -ac);
    assert_eq!(ac.abs(), 1);
}

#[test]
fn single_precision_agrees_with_double() {
    let e64 = PeriodEngine::<f64>::default();
    let e32 = PeriodEngine::<f32>::default();
    let [a64, b64, _] = CyclePath::<f64>::reference();
    let [a32, b32, _] = CyclePath::<f32>::reference();
    for (x, y) in [(a64, a32), (b64, b32)] {
        let v64 = x.evaluate(&e64).value;
        let v32 = y.evaluate(&e32).value;
        let d = Complex::new(v32.re as f64, v32.im as f64) - v64;
        assert!(d.norm() < 1e-4 * v64.norm(), "{} vs {}", v64, v32);
    }
}

#[test]
fn appendix_b_plateau() {
    let e = PeriodEngine::<f64>::default();
    let rows: Vec<_> = (1..=10).map(|k| appendix_b(10.0 * k as f64, &e)).collect();
    assert!(rows.iter().all(|r| r.converged && r.scaled > 0.0));
    // The two arcs are mirror images, so their contributions agree.
    for r in &rows {
        assert!((r.pieces[0] - r.pieces[2]).norm() < 1e-12, "{:?}", r.pieces);
    }
    let top: Vec<f64> = rows[5..].iter().map(|r| r.scaled).collect();
    let (lo, hi) = top.iter().fold((f64::INFINITY, 0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!((hi - lo) / lo < 0.2);
}

#[test]
fn degeneration_area_is_logarithmic() {
    let tau = std::f64::consts::TAU;
    for t in [1e-2, 1e-4, 1e-6] {
        assert!((degeneration_area(t, 0.5) - tau * (0.5f64 / t).ln()).abs() < 1e-9);
    }
    assert_eq!(degeneration_area(0.5, 0.5), 0.0);
    let v = vanishing_cycle_period(1e-3, 0.03, |_, _| c(1.0, 0.0));
    assert!((v - c(tau, 0.0)).norm() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ramification_points_solve_the_quartic(re in -8.0..8.0f64, im in -8.0..8.0f64) {
        let q = c(re, im);
        let r = ramification_points(q);
        for root in r.values() {
            let scale = 1.0 + root.norm().powi(4) + q.norm().powi(2) * root.norm().powi(2);
            prop_assert!(quartic_direct(q, root).norm() < 1e-12 * scale);
            // t ↦ 1/t preserves the fibre.
            prop_assert!(r.values().iter().any(|s| (s * root - 1.0).norm() < 1e-9));
        }
    }

    #[test]
    fn series_oracle_in_upper_half_plane(r in 5.0..20.0f64, th in 0.0..std::f64::consts::PI) {
        let q = Complex64::from_polar(r, th);
        let e = PeriodEngine::<f64>::default();
        let rec = e.sweep(&[q], &[CycleCombination::parse("a-b").unwrap()]).unwrap();
        let want = constant_term_series(q) * (4.0 * std::f64::consts::PI);
        prop_assert!((rec[0].value - want).norm() < 1e-8 * want.norm());
    }
}
