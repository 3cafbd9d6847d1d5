use mirrorforge::novikov::*;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn k(n: i64) -> QCoeff {
    BigRational::from_integer(BigInt::from(n))
}

fn s(lit: &str) -> QSeries {
    parse_series(lit).unwrap()
}

/// Series from `(quarters, coeff)` pairs.
fn quarters(terms: &[(i64, i64)]) -> QSeries {
    QSeries::from_terms(terms.iter().map(|&(e, c)| (q(e, 4), k(c))).collect(), None)
}

/// Inverse of a unit of `Λ_0` supported on the quarter grid, by long division:
/// `y_m = (δ_m0 − Σ_{j≥1} x_j y_{m−j}) / x_0` for `m < 4 * working`.
fn long_division_inverse(x: &QSeries, working: i64) -> QSeries {
    let n = (4 * working) as usize;
    let mut xs = vec![k(0); n];
    for (e, c) in x.terms() {
        let idx = (e * Ratio::from_integer(4)).to_integer() as usize;
        if idx < n {
            xs[idx] = c.clone();
        }
    }
    let mut ys: Vec<QCoeff> = Vec::with_capacity(n);
    for m in 0..n {
        let mut acc = if m == 0 { k(1) } else { k(0) };
        for j in 1..=m {
            acc -= &xs[j] * &ys[m - j];
        }
        ys.push(acc / &xs[0]);
    }
    QSeries::from_terms(ys.into_iter().enumerate().map(|(m, c)| (q(m as i64, 4), c)).collect(), None)
}

#[test]
fn geometric_series_inverse() {
    let x = s("1 + T");
    let w = q(8, 1);
    let inv = x.inv(&w).unwrap();
    let want = QSeries::from_terms((0..8).map(|j| (q(j, 1), k(if j % 2 == 0 { 1 } else { -1 }))).collect(), None);
    assert!(inv.eq_up_to(&want, &w));
    assert!(x.mul(&inv).eq_up_to(&QSeries::one(), &w));
}

#[test]
fn inverse_matches_long_division() {
    let x = s("2 + T^0.3");
    let inv = x.inv(&q(1, 1)).unwrap();
    assert_eq!(inv.coeff_at(&q(0, 1)), BigRational::new(BigInt::from(1), BigInt::from(2)));
    assert_eq!(inv.coeff_at(&q(3, 10)), BigRational::new(BigInt::from(-1), BigInt::from(4)));
    for lit in [&[(0, 3), (1, 1), (6, -2)][..], &[(0, -1), (3, 5)], &[(0, 2), (1, 1), (2, 1), (3, 1)]] {
        let x = quarters(lit);
        let got = x.inv(&q(4, 1)).unwrap();
        assert!(got.eq_up_to(&long_division_inverse(&x, 4), &q(4, 1)), "{}", x);
    }
}

#[test]
fn valuation_examples() {
    assert_eq!(QSeries::t(q(1, 2)).mul(&QSeries::t(q(7, 10))).val(), Some(q(6, 5)));
    assert_eq!(QSeries::zero().val(), None);
    assert!(s("T^1/2 + 3").is_unit0());
    assert!(s("T^1/2").in_lambda_plus());
    assert!(!s("T^-1 + 1").in_lambda0());
}

#[test]
fn transition_examples() {
    let w = q(6, 1);
    let one = QSeries::one();
    let t = QSeries::t(q(1, 1));
    let (u, v) = transition_sphere_down(&one, &t, &w).unwrap();
    assert!(u.eq_up_to(&t, &w) && v.eq_up_to(&one, &w));
    let (u, v) = transition_sphere_down(&one, &QSeries::zero(), &w).unwrap();
    assert!(u.is_zero() && v.eq_up_to(&one, &w));
    let (tw, z) = transition_sphere_to_torus(&one, &t, &w).unwrap();
    assert!(tw.eq_up_to(&one, &w) && z.eq_up_to(&s("T - 1"), &w));
    let (u1, v1) = transition_torus_to_sphere(&tw, &z, &w).unwrap();
    assert!(u1.eq_up_to(&one, &w) && v1.eq_up_to(&t, &w));
    // Outside the overlaps.
    assert!(transition_sphere_down(&t, &one, &w).is_err());
    assert!(transition_sphere_up(&one, &t, &w).is_err());
    assert!(transition_torus_to_sphere(&one, &QSeries::zero(), &w).is_err());
}

#[test]
fn blowdown_of_the_a1_chain() {
    let atlas = AnAtlas::new(2);
    let w = q(10, 1);
    let t = QSeries::t(q(1, 1));
    let (u, v, z) = atlas.blowdown(&ChartPoint::Sphere { j: 1, u: t.clone(), v: t.clone() }, &w).unwrap();
    assert!(u.eq_up_to(&t, &w));
    assert!(v.eq_up_to(&QSeries::t(q(3, 1)), &w));
    assert!(z.eq_up_to(&QSeries::t(q(2, 1)), &w));
    assert!(atlas.blowdown(&ChartPoint::Sphere { j: 3, u: t.clone(), v: t }, &w).is_err());
}

#[test]
fn membership_examples() {
    let atlas = AnAtlas::new(3);
    // z̃ = 1 lies in no chart.
    assert!(atlas.membership(&s("1"), &s("1"), &s("1")).is_orphan());
    // u = 0 forces z̃ = 0 and exactly one sphere chart.
    let m = atlas.membership(&QSeries::zero(), &s("2 + T"), &QSeries::zero());
    assert_eq!(m.spheres, vec![3]);
    assert!(!m.torus);
    // val z̃ = 1: interior points of a segment lie in one chart, corners in two.
    let zt = QSeries::t(q(1, 1));
    let m = atlas.membership(&QSeries::t(q(3, 2)), &QSeries::t(q(3, 2)), &zt);
    assert_eq!(m.spheres, vec![2]);
    let m = atlas.membership(&QSeries::t(q(1, 2)), &QSeries::t(q(5, 2)), &zt);
    assert_eq!(m.spheres, vec![1]);
    let m = atlas.membership(&QSeries::t(q(1, 1)), &QSeries::t(q(2, 1)), &zt);
    assert_eq!(m.spheres, vec![1, 2]);
}

#[test]
fn c2_decomposition_examples() {
    let r = verify_c2_decomposition(40, 7, &q(4, 1));
    assert!(r.pass, "{:?}", r);
    assert!(r.excluded_point_rejected);
    assert_eq!(r.strata.len(), 3);
}

#[test]
fn blowup_incidence_examples() {
    let w = q(5, 1);
    let (u0, v0) = (s("1"), s("2"));
    let (u, v) = (s("1 + T"), s("2 + 2T"));
    assert!(blowup_incidence((&u, &v), (&u0, &v0), (&s("1"), &s("2")), &w));
    assert!(!blowup_incidence((&u, &v), (&u0, &v0), (&s("2"), &s("1")), &w));
    // Every line passes through the centre itself.
    for (a, b) in [("1", "0"), ("0", "1"), ("3", "T")] {
        assert!(blowup_incidence((&u0, &v0), (&u0, &v0), (&s(a), &s(b)), &w));
    }
}

#[test]
fn skeletons() {
    let one = skeleton_valuation_image(&AnAtlas::new(1), 2.0);
    assert_eq!(one.segments.len(), 1);
    assert_eq!((one.segments[0].start, one.segments[0].end), ([0.0, 2.0], [2.0, 0.0]));
    let three = skeleton_valuation_image(&AnAtlas::new(3), 0.5);
    assert!(three.is_chain());
    for (j, seg) in three.segments.iter().enumerate() {
        let j = j as f64;
        assert_eq!(seg.start, [j * 0.5, (3.0 - j) * 0.5]);
        assert_eq!(seg.end, [(j + 1.0) * 0.5, (2.0 - j) * 0.5]);
    }
}

#[test]
fn del_pezzo_atlases() {
    let sq = del_pezzo_chart_atlas(&[[1, 1], [-1, 1], [-1, -1], [1, -1]]).unwrap();
    assert_eq!(sq.chart_count, 9);
    assert!(sq.corners.iter().all(|c| c.multiplicity == 2));
    let p2 = del_pezzo_chart_atlas(&[[1, 0], [0, 1], [-1, -1]]).unwrap();
    assert_eq!(p2.chart_count, 4);
    assert_eq!(p2.torus_charts, 1);
}

#[test]
fn cover_for_small_chains() {
    for n in 1..=4 {
        let r = verify_cover(n, 120, 11, &q(3, 1));
        assert!(r.pass, "{:?}", r);
    }
}

#[test]
fn roots_of_one_plus_lambda_plus() {
    for n in 2..=4 {
        assert!(verify_root_power(n, 25, 3 + n as u64, &q(3, 1)));
    }
    assert!(s("2 + T").nth_root_one_plus(2, &q(3, 1)).is_err());
}

fn series_strategy(min_quarter: i64) -> impl Strategy<Value = QSeries> {
    prop::collection::vec((min_quarter..12i64, -5i64..=5), 1..5).prop_map(|t| quarters(&t))
}

fn unit_strategy() -> impl Strategy<Value = QSeries> {
    ((1i64..=4), prop::bool::ANY, series_strategy(1)).prop_map(|(c, neg, rest)| {
        let c = if neg { -c } else { c };
        QSeries::constant(k(c)).add(&rest)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn valuation_axioms(a in series_strategy(-4), b in series_strategy(-4)) {
        match (a.val(), b.val()) {
            (Some(va), Some(vb)) => {
                prop_assert_eq!(a.mul(&b).val(), Some(va + vb));
                if let Some(vs) = a.add(&b).val() {
                    prop_assert!(vs >= va.min(vb));
                }
            }
            _ => prop_assert!(a.mul(&b).is_zero()),
        }
        prop_assert_eq!(a.neg().val(), a.val());
    }

    #[test]
    fn inverse_agrees_with_long_division(x in unit_strategy()) {
        let w = q(3, 1);
        let inv = x.inv(&w).unwrap();
        prop_assert!(inv.eq_up_to(&long_division_inverse(&x, 3), &w));
        prop_assert!(x.mul(&inv).eq_up_to(&QSeries::one(), &w));
    }

    #[test]
    fn sphere_transitions_round_trip(u in unit_strategy(), v in series_strategy(0)) {
        let w = q(4, 1);
        let (ui, vi) = transition_sphere_down(&u, &v, &w).unwrap();
        // The product u v is the coordinate z̃, shared by all sphere charts.
        prop_assert!(ui.mul(&vi).eq_up_to(&u.mul(&v), &w));
        let (uu, vv) = transition_sphere_up(&ui, &vi, &w).unwrap();
        prop_assert!(uu.eq_up_to(&u, &w) && vv.eq_up_to(&v, &w));
    }

    #[test]
    fn torus_round_trip(w0 in unit_strategy(), v in series_strategy(1)) {
        let w = q(4, 1);
        let (tw, z) = transition_sphere_to_torus(&w0, &v, &w).unwrap();
        let (u1, v1) = transition_torus_to_sphere(&tw, &z, &w).unwrap();
        prop_assert!(u1.eq_up_to(&w0, &w) && v1.eq_up_to(&v, &w));
    }

    #[test]
    fn blowdown_lands_on_the_an_surface(n in 1usize..5, j in 1usize..5, u in series_strategy(0), v in series_strategy(0)) {
        let j = 1 + (j - 1) % n;
        let atlas = AnAtlas::new(n);
        let w = q(6, 1);
        let (bu, bv, bz) = atlas.blowdown(&ChartPoint::Sphere { j, u: u.clone(), v: v.clone() }, &w).unwrap();
        prop_assert!(bu.mul(&bv).eq_up_to(&bz.pow(n as u32), &w));
        prop_assert!(bz.eq_up_to(&u.mul(&v), &w));
    }

    #[test]
    fn roots_and_powers(y in series_strategy(1), n in 2u32..5) {
        let w = q(3, 1);
        let x = QSeries::one().add(&y);
        let r = x.nth_root_one_plus(n, &w).unwrap();
        prop_assert!(r.pow(n).eq_up_to(&x, &w));
        prop_assert!(r.sub(&QSeries::one()).truncate(&w).in_lambda_plus() || r.sub(&QSeries::one()).truncate(&w).is_zero());
    }

    #[test]
    fn literal_round_trip(x in series_strategy(-8)) {
        prop_assert_eq!(parse_series::<QCoeff, Q>(&x.to_literal()).unwrap(), x);
    }
}
