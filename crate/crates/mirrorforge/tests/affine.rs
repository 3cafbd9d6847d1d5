use mirrorforge::affine_structures::*;
use mirrorforge::periods::{circle_loop, CyclePath, PeriodEngine, Region};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ab_monodromy(e: &PeriodEngine<f64>, center: f64, base: f64) -> Mat {
    let (a, b) = e.standard_cycles(c(base, 0.0), Region::Real).unwrap();
    let r = e.monodromy(&circle_loop(c(center, 0.0), c(base, 0.0), 64), &[a, b]).unwrap();
    assert!(r.residual < 1e-6);
    r.matrix
}

#[test]
fn b_cps_layout() {
    let b = build_B_CPS();
    assert_eq!(b.len(), 4);
    let mut pos = b.positions();
    pos.sort_by(|p, q| p.partial_cmp(q).unwrap());
    assert_eq!(pos, vec![[-0.5, -0.5], [-0.5, 0.5], [0.5, -0.5], [0.5, 0.5]]);
    for i in 0..4 {
        let m = b.local_monodromy(i).unwrap();
        assert_eq!(parabolic_class(m).map(i64::abs), Some(1), "{:?}", m);
    }
}

#[test]
fn b_cps_prime_layout() {
    let b = build_B_CPS_prime();
    assert_eq!(b.positions(), vec![[-0.5, 0.5], [0.0, 0.0], [0.5, -0.5]]);
    let m = b.singularities[1].monodromy();
    assert_eq!(m, [[-1, -2], [2, 3]]);
    let n = [[m[0][0] - 1, m[0][1]], [m[1][0], m[1][1] - 1]];
    assert_eq!(mat_mul(n, n), [[0, 0], [0, 0]]);
    assert_ne!(m, [[1, 0], [0, 1]]);
    assert_eq!(divisibility(m), 2);
}

#[test]
fn gluings_are_parabolic_and_fix_their_direction() {
    for atlas in [build_B_CPS(), build_B_CPS_prime()] {
        for s in &atlas.singularities {
            for cut in &s.cuts {
                assert_eq!(det(cut.gluing), 1);
                assert_eq!(trace(cut.gluing), 2);
                let w = cut.invariant_direction();
                assert_eq!(apply(cut.gluing, [w[0] as f64, w[1] as f64]), [w[0] as f64, w[1] as f64]);
            }
        }
    }
}

#[test]
fn atlas_json_schema() {
    let j = build_B_CPS_prime().to_json();
    assert_eq!(j["singularities"].as_array().unwrap().len(), 3);
    assert_eq!(j["identifications"].as_array().unwrap().len(), 4);
    assert_eq!(j["singularities"][1]["matrix"], serde_json::json!([[-1, -2], [2, 3]]));
}

#[test]
fn numeric_monodromy_matches_b_cps_prime() {
    let e = PeriodEngine::<f64>::default();
    let bp = build_B_CPS_prime();
    let m_minus = ab_monodromy(&e, -4.0, -3.5);
    assert_eq!(m_minus, [[1, 0], [2, 1]]);
    assert_eq!(affine_monodromy_from_periods(m_minus), Some(bp.singularities[0].monodromy()));
    let m_o = ab_monodromy(&e, 0.0, -0.5);
    assert_eq!(affine_monodromy_from_periods(m_o), Some(bp.singularities[1].monodromy()));
}

#[test]
fn large_loop_matches_numeric() {
    let e = PeriodEngine::<f64>::default();
    let [a, b, _] = CyclePath::<f64>::reference();
    let lp = [c(-2.0, 0.0), c(-2.0, 6.0), c(-6.0, 6.0), c(-6.0, -6.0), c(6.0, -6.0), c(6.0, 6.0), c(-2.0, 6.0), c(-2.0, 0.0)];
    let r = e.monodromy(&lp, &[a, b]).unwrap();
    let affine = affine_monodromy_from_periods(r.matrix).unwrap();
    // Going up from −2 enters the gap between the cut from O′ and the cut from A′₋.
    let bp = build_B_CPS_prime();
    assert_eq!(bp.large_loop_monodromy(Some(95f64.to_radians())).unwrap(), affine);
    let big = build_B_CPS().large_loop_monodromy(None).unwrap();
    assert_eq!(parabolic_class(big).map(i64::abs), parabolic_class(affine).map(i64::abs));
    assert_eq!(parabolic_class(affine).map(i64::abs), Some(8));
}

#[test]
fn transport_without_cuts_is_trivial() {
    let b = build_B_CPS();
    let path = AffinePath::from_polyline(&b, &[[0.0, 0.0], [0.3, 0.1], [-0.2, 0.4]]).unwrap();
    assert!(path.crossings.is_empty());
    assert_eq!(parallel_transport(&b, &path, [0.3, -0.7]).unwrap(), [0.3, -0.7]);
    // Contractible loop avoiding the cuts.
    let lp: Vec<Point> = (0..=40).map(|k| {
        let t = k as f64 / 40.0 * std::f64::consts::TAU;
        [0.2 * t.cos(), 0.2 * t.sin()]
    }).collect();
    let path = AffinePath::from_polyline(&b, &lp).unwrap();
    assert_eq!(path.holonomy(), [[1, 0], [0, 1]]);
}

#[test]
fn dipping_into_a_sector_and_back_is_trivial() {
    let b = build_B_CPS();
    // Enter P1's sector through l⁺ (the horizontal ray) and leave through it again.
    let path = AffinePath::from_polyline(&b, &[[1.0, 0.3], [1.0, 0.8], [1.2, 0.3]]).unwrap();
    assert!(path.crossings.is_empty());
}

fn around(center: Point, r: f64, start: f64) -> Vec<Point> {
    (0..=64).map(|k| {
        let t = start + k as f64 / 64.0 * std::f64::consts::TAU;
        [center[0] + r * t.cos(), center[1] + r * t.sin()]
    }).collect()
}

#[test]
fn invariant_direction_survives_loop() {
    let b = build_B_CPS();
    for (i, s) in b.singularities.iter().enumerate() {
        let mid = [-(s.position[0]), -(s.position[1])];
        let start = mid[1].atan2(mid[0]);
        let path = AffinePath::from_polyline(&b, &around(s.position, 0.25, start)).unwrap();
        assert_eq!(path.crossings.len(), 1, "singularity {}", i);
        let w = s.cuts[0].invariant_direction();
        let w = [w[0] as f64, w[1] as f64];
        assert_eq!(parallel_transport(&b, &path, w).unwrap(), w);
    }
}

#[test]
fn loop_around_a_minus_shears_along_its_direction() {
    let b = build_B_CPS_prime();
    let s = &b.singularities[0];
    let path = AffinePath::from_polyline(&b, &around(s.position, 0.25, -0.25 * std::f64::consts::PI)).unwrap();
    let w = s.cuts[0].invariant_direction();
    for v in [[0.0, 1.0], [1.0, 0.0], [2.0, -3.0]] {
        let t = parallel_transport(&b, &path, v).unwrap();
        let d = [t[0] - v[0], t[1] - v[1]];
        assert_eq!(d[0] * w[1] as f64 - d[1] * w[0] as f64, 0.0);
    }
    assert_eq!(parallel_transport(&b, &path, [0.0, 1.0]).unwrap(), [-1.0, 0.0]);
}

#[test]
fn path_through_singularity_rejected() {
    let b = build_B_CPS_prime();
    let err = AffinePath::from_polyline(&b, &[[-0.25, 0.25], [0.25, -0.25]]).unwrap_err();
    assert_eq!(err, AffineError::ThroughSingularity([0.0, 0.0]));
}

#[test]
fn diagonal_line_meets_o_prime_without_crossing() {
    let b = build_B_CPS_prime();
    let short = trace_affine_line(&b, [-0.25, 0.25], [1.0, -1.0], 0.2).unwrap();
    assert!(short.crossings.is_empty());
    assert_eq!(short.stop, Stop::Length);
    let full = trace_affine_line(&b, [-0.25, 0.25], [1.0, -1.0], 0.5).unwrap();
    assert!(full.crossings.is_empty());
    assert_eq!(full.stop, Stop::Singularity(1));
    assert_eq!(*full.points.last().unwrap(), [0.0, 0.0]);
    let back = trace_affine_line(&b, [0.25, -0.25], [-1.0, 1.0], 0.2).unwrap();
    assert!(back.crossings.is_empty());
}

#[test]
fn line_along_cut_stays_on_it() {
    let b = build_B_CPS();
    let path = trace_affine_line(&b, [0.5, 0.75], [0.0, 1.0], 3.0).unwrap();
    assert!(path.crossings.is_empty());
    assert!(path.points.iter().all(|p| p[0] == 0.5));
    assert_eq!(*path.points.last().unwrap(), [0.5, 3.75]);
}

#[test]
fn tracing_is_reparameterization_invariant() {
    let b = build_B_CPS();
    let path = trace_affine_line(&b, [0.9, 0.1], [0.0, -1.0], 4.0).unwrap();
    assert!(!path.crossings.is_empty());
    for k in [2, 4, 8] {
        let fine = path.resample(k);
        assert!(hausdorff(&path, &fine) < 1e-12);
        assert_eq!(fine.holonomy(), path.holonomy());
    }
}

#[test]
fn traced_direction_is_transported() {
    let b = build_B_CPS();
    let v = [0.0, -1.0];
    let path = trace_affine_line(&b, [1.0, 0.0], v, 1.0).unwrap();
    let out = parallel_transport(&b, &path, v).unwrap();
    let last = path.points[path.points.len() - 1];
    let prev = path.points[path.points.len() - 2];
    let seg = [last[0] - prev[0], last[1] - prev[1]];
    assert!((seg[0] * out[1] - seg[1] * out[0]).abs() < 1e-12);
    assert!(seg[0] * out[0] + seg[1] * out[1] > 0.0);
}

#[test]
fn syz_samples_lie_on_the_expected_lines() {
    let e = PeriodEngine::<f64>::default();
    let grid = [c(-1.0, 0.0), c(-3.0, 0.0), c(0.0, 3.0), c(-1.0, 1.0)];
    let pts = sample_syz_base(&e, &grid).unwrap();
    assert!(pts.iter().all(|p| p.converged));
    for p in &pts[..2] {
        assert!((p.x + p.y).abs() < 1e-7 * (1.0 + p.x.abs() + p.y.abs()), "{:?}", p);
    }
    assert!(pts[2].x.abs() < 1e-7 * (1.0 + pts[2].y.abs()));
    // Off the special lines both coordinates are generic.
    assert!(pts[3].x.abs() > 1e-3 && (pts[3].x + pts[3].y).abs() > 1e-3);
    assert!(sample_syz_base(&e, &[c(-1.0, -1.0)]).is_err());
}

#[test]
fn comparison_with_b_cps_prime() {
    let e = PeriodEngine::<f64>::default();
    let r = compare_to_BCPS_prime(&e, &build_B_CPS_prime(), 10).unwrap();
    assert!(r.pass, "{:?}", r);
    let c_pt = r.c_point.unwrap();
    // C sits on the imaginary-axis cut with y_C = −2·x_A.
    assert!(c_pt[0].abs() < 1e-9);
    assert!((c_pt[1] + 2.0 * r.anchor[0]).abs() < 1e-6);
    // A₋ = (−2π², 2π²), so Ψ = id / (4π²).
    let two_pi2 = 2.0 * std::f64::consts::PI.powi(2);
    assert!((r.anchor[1] - two_pi2).abs() < 1e-8);
    assert!((r.lambda - 1.0 / (2.0 * two_pi2)).abs() < 1e-12);
}
