use mirrorforge::surface_lattice::*;
use proptest::prelude::*;

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Smooth complete fans: P2, the Hirzebruch surfaces and their corner blowups.
fn smooth_fans() -> Vec<Vec<[i64; 2]>> {
    let mut out = vec![vec![[1, 0], [0, 1], [-1, -1]]];
    for a in 0..5 {
        out.push(vec![[1, 0], [0, 1], [-1, a], [0, -1]]);
    }
    let mut frontier = out.clone();
    for _ in 0..2 {
        let mut next = Vec::new();
        for f in &frontier {
            for i in 0..f.len() {
                let j = (i + 1) % f.len();
                let mut g = f.clone();
                g.insert(i + 1, [f[i][0] + f[j][0], f[i][1] + f[j][1]]);
                next.push(g);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn adjunction_defect(lat: &SurfaceLattice, name: &str) -> i64 {
    let c = lat.class(name).unwrap();
    lat.dot(c, c) + lat.dot(c, &lat.canonical)
}

#[test]
fn toric_self_intersections_from_the_fan() {
    for rays in smooth_fans() {
        let r = rays.len();
        let lat = SurfaceLattice::toric(&rays).unwrap();
        for i in 0..r {
            // v_{i-1} + v_{i+1} = c v_i gives D_i^2 = -c = -det(v_{i-1}, v_{i+1}).
            let want = -det(rays[(i + r - 1) % r], rays[(i + 1) % r]);
            assert_eq!(lat.self_intersection(&format!("D{}", i + 1)).unwrap(), want, "{:?}", rays);
            assert_eq!(adjunction_defect(&lat, &format!("D{}", i + 1)), -2);
        }
        assert_eq!(lat.k_squared(), 12 - r as i64);
        assert_eq!(lat.determinant().abs(), 1);
        assert_eq!(lat.signature(), (1, r - 3));
        let id = verify_id_cycle(&lat).unwrap();
        assert!(id.sum_is_anticanonical);
    }
}

#[test]
fn corner_blowup_matches_toric_blowup() {
    let base = vec![[1, 0], [0, 1], [-1, 2], [0, -1]];
    for i in 0..base.len() {
        let j = (i + 1) % base.len();
        let mut lat = SurfaceLattice::toric(&base).unwrap();
        let e = lat.blowup(&Center::Intersection { first: format!("D{}", i + 1), second: format!("D{}", j + 1) }).unwrap();
        let mut rays = base.clone();
        rays.insert(i + 1, [base[i][0] + base[j][0], base[i][1] + base[j][1]]);
        let toric = SurfaceLattice::toric(&rays).unwrap();
        // Walk the boundary cycle of each and compare self-intersections.
        let mut names: Vec<String> = (1..=base.len()).map(|k| format!("D{}", k)).collect();
        names.insert(i + 1, e);
        let a: Vec<i64> = names.iter().map(|n| lat.self_intersection(n).unwrap()).collect();
        let b: Vec<i64> = (1..=rays.len()).map(|k| toric.self_intersection(&format!("D{}", k)).unwrap()).collect();
        assert_eq!(a, b);
        assert_eq!(lat.k_squared(), toric.k_squared());
    }
}

#[test]
fn blowup_and_blowdown_invariants() {
    let mut lat = SurfaceLattice::p2();
    let e = lat.blowup(&Center::Interior { curve: "D1".into(), label: "-1".into() }).unwrap();
    assert_eq!(e, "E1");
    assert_eq!(lat.self_intersection("E1").unwrap(), -1);
    assert_eq!(lat.self_intersection("D1").unwrap(), 0);
    assert_eq!(lat.k_squared(), 8);
    assert!(lat.blowup(&Center::Intersection { first: "E1".into(), second: "D2".into() }).is_err());
    assert!(matches!(lat.blowdown("D2"), Err(SurfaceError::NotExceptional(_, 1, -3))));
    lat.blowdown("E1").unwrap();
    assert_eq!(lat.k_squared(), 9);
    assert_eq!(lat.self_intersection("D1").unwrap(), 1);
    assert!(matches!(lat.class("E1"), Err(SurfaceError::UnknownCurve(_))));
}

#[test]
fn appendix_constructions() {
    for d in 1..=5u32 {
        let (lat, rep) = run_appendix_a(d).unwrap();
        assert!(rep.pass, "d = {}: {:?}", d, rep);
        assert_eq!(lat.rank(), 10);
        assert_eq!(rep.k_squared, 0);
        assert_eq!(rep.determinant.abs(), 1);
        assert_eq!(rep.signature, (1, 9));
        assert_eq!(rep.boundary.len(), d as usize);
        let want = if d == 1 { 0 } else { -2 };
        assert!(rep.id_cycle.self_intersections.iter().all(|s| *s == want));
        assert!(rep.euler_sum_is_12);
        // A fibre class F = -K has F^2 = 0 and K·F = 0.
        let f: Vec<i64> = lat.canonical.iter().map(|k| -k).collect();
        assert_eq!(lat.dot(&f, &f), 0);
    }
    assert!(matches!(run_appendix_a(6), Err(SurfaceError::UnsupportedDegree(6))));
}

#[test]
fn euler_numbers() {
    let table = [("I0", 0), ("I1", 1), ("I9", 9), ("II", 2), ("III", 3), ("IV", 4), ("I0*", 6), ("I*1", 7), ("I4*", 10), ("IV*", 8), ("III*", 9), ("II*", 10)];
    for (f, e) in table {
        assert_eq!(euler_number(f).unwrap(), e, "{}", f);
    }
    for bad in ["V", "Ix", "I*x", ""] {
        assert!(euler_number(bad).is_err(), "{}", bad);
    }
    for c in NAMED_CONFIGURATIONS {
        assert!(euler_configuration_check(&parse_configuration(c).unwrap()).unwrap(), "{}", c);
    }
    assert_eq!(parse_configuration("I9 I1^3").unwrap(), vec!["I9", "I1", "I1", "I1"]);
    assert!(!euler_configuration_check(&parse_configuration("I9 I1").unwrap()).unwrap());
    assert!(parse_configuration("I1^x").is_err());
}

#[test]
fn script_format() {
    let steps = parse_script("# comment\nbase p2\n\nblowup interior D1@-1  # trailing\nblowup infnear E1^D1\nnote two points\n").unwrap();
    assert_eq!(steps.len(), 4);
    assert_eq!(steps[0], ScriptStep::Base(vec![[1, 0], [0, 1], [-1, -1]]));
    assert_eq!(steps[2], ScriptStep::Blowup(Center::Intersection { first: "E1".into(), second: "D1".into() }));
    let (lat, notes) = run_script(&steps).unwrap();
    assert_eq!(notes, vec!["two points"]);
    assert_eq!(lat.self_intersection("D1").unwrap(), -1);
    assert_eq!(lat.self_intersection("E1").unwrap(), -2);
    for (text, line) in [("base p3", 1), ("base p2\nfrobnicate", 2), ("base p2\n\nblowup infnear E1", 3), ("base fan 1,0;0", 1)] {
        match parse_script(text) {
            Err(SurfaceError::Script { line: l, .. }) => assert_eq!(l, line, "{}", text),
            other => panic!("{}: {:?}", text, other),
        }
    }
    assert!(run_script(&parse_script("blowdown E1").unwrap()).is_err());
    assert!(matches!(SurfaceLattice::toric(&[[1, 0], [1, 2], [-1, -1]]), Err(SurfaceError::NotSmooth(_))));
    assert!(matches!(SurfaceLattice::toric(&[[1, 0], [-1, -1], [0, 1]]), Err(SurfaceError::BadFan)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_blowups_keep_the_lattice_unimodular(base in 0usize..6, moves in prop::collection::vec((0usize..64, 0usize..64, prop::bool::ANY), 1..7)) {
        let fans = smooth_fans();
        let mut lat = SurfaceLattice::toric(&fans[base]).unwrap();
        for (i, j, interior) in moves {
            let names: Vec<String> = lat.curves.iter().map(|c| c.0.clone()).collect();
            let a = names[i % names.len()].clone();
            let b = names[j % names.len()].clone();
            let before = lat.clone();
            let center = if interior || a == b {
                Center::Interior { curve: a.clone(), label: "-1".into() }
            } else {
                Center::Intersection { first: a.clone(), second: b.clone() }
            };
            let e = match lat.blowup(&center) {
                Ok(e) => e,
                Err(SurfaceError::DisjointCenter(..)) => continue,
                Err(err) => return Err(TestCaseError::fail(err.to_string())),
            };
            prop_assert_eq!(lat.k_squared(), 10 - lat.rank() as i64);
            prop_assert_eq!(lat.determinant().abs(), 1);
            prop_assert_eq!(lat.self_intersection(&e).unwrap(), -1);
            prop_assert_eq!(lat.self_intersection(&a).unwrap(), before.self_intersection(&a).unwrap() - 1);
            for n in lat.curves.iter().map(|c| c.0.clone()) {
                prop_assert_eq!(adjunction_defect(&lat, &n), -2, "{}", n);
            }
            // Contracting the new curve restores every intersection number.
            let mut down = lat.clone();
            down.blowdown(&e).unwrap();
            prop_assert_eq!(down.k_squared(), before.k_squared());
            for x in &names {
                for y in &names {
                    let (cx, cy) = (down.class(x).unwrap(), down.class(y).unwrap());
                    let (bx, by) = (before.class(x).unwrap(), before.class(y).unwrap());
                    prop_assert_eq!(down.dot(cx, cy), before.dot(bx, by));
                }
            }
        }
    }
}
