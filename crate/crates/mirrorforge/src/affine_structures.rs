//! Integral affine manifolds with focus-focus singularities.
//!
//! A singularity removes one or more convex sectors with apex at the singular point. Each
//! sector is bounded by rays `apex + s·d₊` and `apex + s·d₋` (counterclockwise from `d₊` to
//! `d₋`), and the two rays are identified by `apex + s·d₊ ↦ apex + s·d₋`, whose linear part
//! `G` satisfies `G·d₊ = d₋`. Crossing a cut pair counterclockwise (entering through `l⁺`,
//! leaving through `l⁻`) applies `G` to tangent vectors.
//!
//! The second half of the module samples the affine coordinates of the fibration base and
//! compares them with `B′_CPS`.

use crate::periods::{cx, Locus, LocusReport, PeriodEngine, PeriodError, Region};
use crate::scalar::Real;
use num_complex::Complex;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub type Mat = [[i64; 2]; 2];
pub type Point = [f64; 2];

const GEOM_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AffineError {
    #[error("path passes through the singular point {0:?}")]
    ThroughSingularity(Point),
    #[error("point {0:?} lies in a deleted sector")]
    InDeletedSector(Point),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Period(#[from] PeriodError),
}

pub fn mat_mul(a: Mat, b: Mat) -> Mat {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn det(m: Mat) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn trace(m: Mat) -> i64 {
    m[0][0] + m[1][1]
}

/// Inverse of a unimodular matrix.
pub fn inverse(m: Mat) -> Mat {
    let d = det(m);
    assert!(d == 1 || d == -1, "matrix not unimodular");
    [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]]
}

pub fn apply(m: Mat, v: [f64; 2]) -> [f64; 2] {
    [m[0][0] as f64 * v[0] + m[0][1] as f64 * v[1], m[1][0] as f64 * v[0] + m[1][1] as f64 * v[1]]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of the entries of `M − I`.
pub fn divisibility(m: Mat) -> i64 {
    let n = [m[0][0] - 1, m[0][1], m[1][0], m[1][1] - 1];
    n.iter().fold(0, |g, &x| gcd(g, x))
}

/// `Some(n)` when `m` is conjugate over `SL(2,ℤ)`-invariants to `[[1,n],[0,1]]`: trace 2,
/// `(M−I)² = 0`, with the sign read from `β − γ`.
pub fn parabolic_class(m: Mat) -> Option<i64> {
    let n = [[m[0][0] - 1, m[0][1]], [m[1][0], m[1][1] - 1]];
    if det(m) != 1 || trace(m) != 2 || mat_mul(n, n) != [[0, 0], [0, 0]] {
        return None;
    }
    let d = divisibility(m);
    Some((m[0][1] - m[1][0]).signum() * d)
}

/// Affine monodromy in the `(x, y) = (x_a − x_b, x_a + x_b)` chart induced by a homology
/// monodromy `m` in the `(a, b)` frame (columns are images of `a`, `b`).
///
/// Coordinates transform as `(x, y) ↦ N·(x, y)` with `N = P·mᵀ·P⁻¹`, `P = [[1,−1],[1,1]]`; the
/// gluing seen by tangent vectors along the same loop is `N⁻¹`. `None` if that is not integral.
pub fn affine_monodromy_from_periods(m: Mat) -> Option<Mat> {
    let mt_inv = inverse([[m[0][0], m[1][0]], [m[0][1], m[1][1]]]);
    let p = [[1, -1], [1, 1]];
    let p_adj = [[1, 1], [-1, 1]];
    let twice = mat_mul(mat_mul(p, mt_inv), p_adj);
    if twice.iter().flatten().any(|x| x % 2 != 0) {
        return None;
    }
    Some([[twice[0][0] / 2, twice[0][1] / 2], [twice[1][0] / 2, twice[1][1] / 2]])
}

fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

fn scale(a: Point, s: f64) -> Point {
    [a[0] * s, a[1] * s]
}

fn to_f(v: [i64; 2]) -> Point {
    [v[0] as f64, v[1] as f64]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

/// One deleted sector and the identification of its boundary rays.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutPair {
    pub d_plus: [i64; 2],
    pub d_minus: [i64; 2],
    /// Linear part of the identification, `gluing·d₊ = d₋`.
    pub gluing: Mat,
}

impl CutPair {
    /// The parabolic with `G·d₊ = d₋`, `G·d₋ = −d₊ + 2d₋`.
    pub fn parabolic(d_plus: [i64; 2], d_minus: [i64; 2]) -> Self {
        let [p, r] = d_plus;
        let [s, u] = d_minus;
        let dt = p * u - r * s;
        assert_eq!(dt, 1, "cut rays must form a positive unimodular basis");
        // G·B = B·[[0,−1],[1,2]] with B = (d₊ d₋), so G = B·K·B⁻¹.
        let b = [[p, s], [r, u]];
        let binv = [[u, -s], [-r, p]];
        let gluing = mat_mul(mat_mul(b, [[0, -1], [1, 2]]), binv);
        CutPair { d_plus, d_minus, gluing }
    }

    /// Fixed direction of the gluing.
    pub fn invariant_direction(&self) -> [i64; 2] {
        [self.d_plus[0] - self.d_minus[0], self.d_plus[1] - self.d_minus[1]]
    }

    fn ray(&self, side: Side) -> Point {
        match side {
            Side::Plus => to_f(self.d_plus),
            Side::Minus => to_f(self.d_minus),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineSingularity {
    pub name: String,
    pub position: Point,
    /// Cut pairs in counterclockwise order around the singularity.
    pub cuts: Vec<CutPair>,
}

impl AffineSingularity {
    /// Counterclockwise local monodromy: the gluings composed in the order a small loop meets them.
    pub fn monodromy(&self) -> Mat {
        self.cuts.iter().fold([[1, 0], [0, 1]], |m, c| mat_mul(c.gluing, m))
    }

    /// Is `p` strictly inside one of the deleted sectors?
    pub fn in_sector(&self, p: Point) -> bool {
        let w = sub(p, self.position);
        self.cuts.iter().any(|c| cross(to_f(c.d_plus), w) > GEOM_EPS && cross(w, to_f(c.d_minus)) > GEOM_EPS)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineAtlas {
    pub name: String,
    pub singularities: Vec<AffineSingularity>,
}

/// A boundary-ray hit: singularity, cut pair, side, parameter along the query and along the ray.
#[derive(Clone, Copy, Debug)]
struct Hit {
    sing: usize,
    cut: usize,
    side: Side,
    tau: f64,
    s: f64,
}

impl AffineAtlas {
    pub fn len(&self) -> usize {
        self.singularities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.singularities.is_empty()
    }

    pub fn positions(&self) -> Vec<Point> {
        self.singularities.iter().map(|s| s.position).collect()
    }

    pub fn is_singular(&self, p: Point) -> bool {
        self.singularities.iter().any(|s| (p[0] - s.position[0]).abs() < GEOM_EPS && (p[1] - s.position[1]).abs() < GEOM_EPS)
    }

    pub fn in_deleted_sector(&self, p: Point) -> bool {
        self.singularities.iter().any(|s| s.in_sector(p))
    }

    /// Check the structural invariants: unimodular parabolic gluings with `G·d₊ = d₋`, and
    /// sectors that meet no other singularity's sector or apex.
    pub fn validate(&self) -> Result<(), AffineError> {
        for s in &self.singularities {
            for c in &s.cuts {
                let g = c.gluing;
                if det(g) != 1 || trace(g) != 2 {
                    return Err(AffineError::Degenerate(format!("{}: gluing {:?} is not parabolic", s.name, g)));
                }
                if apply(g, to_f(c.d_plus)) != to_f(c.d_minus) {
                    return Err(AffineError::Degenerate(format!("{}: gluing does not map d+ to d-", s.name)));
                }
                if apply(g, to_f(c.invariant_direction())) != to_f(c.invariant_direction()) {
                    return Err(AffineError::Degenerate(format!("{}: invariant direction not fixed", s.name)));
                }
            }
        }
        for (i, s) in self.singularities.iter().enumerate() {
            for (j, t) in self.singularities.iter().enumerate() {
                if i != j && s.in_sector(t.position) {
                    return Err(AffineError::Degenerate(format!("{} lies in a sector of {}", t.name, s.name)));
                }
            }
        }
        // Two quadrant-type sectors with distinct apices overlap iff some ray of one meets
        // the other; probe along the rays.
        for (i, s) in self.singularities.iter().enumerate() {
            for c in &s.cuts {
                for side in [Side::Plus, Side::Minus] {
                    let mid = scale(add(to_f(c.d_plus), to_f(c.d_minus)), 0.5);
                    let d = c.ray(side);
                    for k in 1..200 {
                        let r = k as f64 * 0.05;
                        let p = add(s.position, add(scale(d, r), scale(mid, 1e-6)));
                        for (j, t) in self.singularities.iter().enumerate() {
                            if i != j && t.in_sector(p) {
                                return Err(AffineError::Degenerate(format!("sectors of {} and {} overlap", s.name, t.name)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Boundary rays met by the segment `p + τ·v`, `τ ∈ (lo, hi]`, sorted by `τ`. Errors when
    /// the segment runs through a singular point first.
    fn hits(&self, p: Point, v: Point, lo: f64, hi: f64) -> Vec<Hit> {
        let mut out = Vec::new();
        for (si, s) in self.singularities.iter().enumerate() {
            for (ci, c) in s.cuts.iter().enumerate() {
                for side in [Side::Plus, Side::Minus] {
                    let d = c.ray(side);
                    let den = cross(v, d);
                    if den.abs() < GEOM_EPS {
                        continue;
                    }
                    let w = sub(s.position, p);
                    let tau = cross(w, d) / den;
                    let sr = cross(w, v) / den;
                    if tau > lo + GEOM_EPS && tau <= hi + GEOM_EPS && sr > GEOM_EPS {
                        out.push(Hit { sing: si, cut: ci, side, tau, s: sr });
                    }
                }
            }
        }
        out.sort_by(|a, b| a.tau.total_cmp(&b.tau));
        out
    }

    /// First singular point on `p + τ·v`, `τ ∈ (lo, hi]`.
    fn apex_hit(&self, p: Point, v: Point, lo: f64, hi: f64) -> Option<(usize, f64)> {
        let vv = v[0] * v[0] + v[1] * v[1];
        self.singularities
            .iter()
            .enumerate()
            .filter_map(|(i, s)| {
                let w = sub(s.position, p);
                if cross(v, w).abs() > GEOM_EPS * vv.sqrt().max(1.0) {
                    return None;
                }
                let tau = (w[0] * v[0] + w[1] * v[1]) / vv;
                (tau > lo + GEOM_EPS && tau <= hi + GEOM_EPS).then_some((i, tau))
            })
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Counterclockwise monodromy around singularity `i`, measured by transporting along a
    /// small polygon.
    pub fn local_monodromy(&self, i: usize) -> Result<Mat, AffineError> {
        let c = self.singularities[i].position;
        let r = 0.5 * self.separation(i).min(1.0);
        self.loop_monodromy(c, r, None)
    }

    /// Counterclockwise monodromy along the circle of radius `r` about `center`, based at angle
    /// `start` or else at the first admissible angle.
    pub fn loop_monodromy(&self, center: Point, r: f64, start: Option<f64>) -> Result<Mat, AffineError> {
        let n = 720;
        let start = match start {
            Some(th) => th,
            None => (0..n)
                .map(|k| 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64)
                .find(|th| !self.in_deleted_sector(add(center, [r * th.cos(), r * th.sin()])))
                .ok_or_else(|| AffineError::Degenerate("loop lies inside deleted sectors".into()))?,
        };
        let pts: Vec<Point> = (0..=n)
            .map(|k| {
                let th = start + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                add(center, [r * th.cos(), r * th.sin()])
            })
            .collect();
        let path = AffinePath::from_polyline(self, &pts)?;
        Ok(path.holonomy())
    }

    fn separation(&self, i: usize) -> f64 {
        let p = self.singularities[i].position;
        self.singularities
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, s)| ((s.position[0] - p[0]).powi(2) + (s.position[1] - p[1]).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min)
    }

    /// Product of the local monodromies along a circle enclosing every singularity, based at
    /// angle `start` (or the first admissible one).
    pub fn large_loop_monodromy(&self, start: Option<f64>) -> Result<Mat, AffineError> {
        let r = 2.0 + self.positions().iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
        self.loop_monodromy([0.0, 0.0], r, start)
    }

    /// `{singularities:[{pos, cut_dir, matrix}], identifications:[...]}`.
    pub fn to_json(&self) -> Value {
        let sings: Vec<Value> = self
            .singularities
            .iter()
            .map(|s| {
                json!({
                    "name": s.name,
                    "pos": s.position,
                    "cut_dir": s.cuts.iter().map(|c| c.invariant_direction()).collect::<Vec<_>>(),
                    "matrix": s.monodromy(),
                })
            })
            .collect();
        let mut ids = Vec::new();
        for s in &self.singularities {
            for c in &s.cuts {
                ids.push(json!({
                    "singularity": s.name,
                    "from": {"base": s.position, "dir": c.d_plus},
                    "to": {"base": s.position, "dir": c.d_minus},
                    "matrix": c.gluing,
                }));
            }
        }
        json!({ "name": self.name, "singularities": sings, "identifications": ids })
    }
}

/// Four singularities at `(±1/2, ±1/2)`, each removing the outward quadrant.
#[allow(non_snake_case)]
pub fn build_B_CPS() -> AffineAtlas {
    let q = |name: &str, pos: Point, dp: [i64; 2], dm: [i64; 2]| AffineSingularity {
        name: name.into(),
        position: pos,
        cuts: vec![CutPair::parabolic(dp, dm)],
    };
    AffineAtlas {
        name: "B_CPS".into(),
        singularities: vec![
            q("P1", [0.5, 0.5], [1, 0], [0, 1]),
            q("P2", [-0.5, 0.5], [0, 1], [-1, 0]),
            q("P3", [-0.5, -0.5], [-1, 0], [0, -1]),
            q("P4", [0.5, -0.5], [0, -1], [1, 0]),
        ],
    }
}

/// `A′₋ = (−1/2, 1/2)`, `O′ = (0, 0)` carrying two cut pairs, `A′₊ = (1/2, −1/2)`.
#[allow(non_snake_case)]
pub fn build_B_CPS_prime() -> AffineAtlas {
    AffineAtlas {
        name: "B_CPS_prime".into(),
        singularities: vec![
            AffineSingularity { name: "A-".into(), position: [-0.5, 0.5], cuts: vec![CutPair::parabolic([0, 1], [-1, 0])] },
            AffineSingularity {
                name: "O".into(),
                position: [0.0, 0.0],
                cuts: vec![CutPair::parabolic([1, 0], [0, 1]), CutPair::parabolic([-1, 0], [0, -1])],
            },
            AffineSingularity { name: "A+".into(), position: [0.5, -0.5], cuts: vec![CutPair::parabolic([0, -1], [1, 0])] },
        ],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    /// Index into `AffinePath::points` of the last point before the jump.
    pub after: usize,
    pub singularity: usize,
    pub cut: usize,
    /// Side entered.
    pub entered: Side,
    pub matrix: Mat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stop {
    Length,
    Singularity(usize),
}

/// Polyline in chart coordinates with the cut crossings met along it. Consecutive points are
/// joined by straight segments, except across a crossing, where the path jumps between
/// identified boundary rays.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffinePath {
    pub points: Vec<Point>,
    pub crossings: Vec<Crossing>,
    pub stop: Stop,
}

impl AffinePath {
    /// Read the crossings of a planar polyline. A stretch through a deleted sector counts as
    /// one crossing when it enters through one ray and leaves through the other.
    pub fn from_polyline(atlas: &AffineAtlas, pts: &[Point]) -> Result<Self, AffineError> {
        for p in [pts.first(), pts.last()].into_iter().flatten() {
            if atlas.in_deleted_sector(*p) {
                return Err(AffineError::InDeletedSector(*p));
            }
        }
        let mut crossings = Vec::new();
        let mut inside: Vec<Vec<Option<Side>>> = atlas.singularities.iter().map(|s| vec![None; s.cuts.len()]).collect();
        for (k, w) in pts.windows(2).enumerate() {
            let v = sub(w[1], w[0]);
            if let Some((i, _)) = atlas.apex_hit(w[0], v, -GEOM_EPS * 2.0, 1.0) {
                return Err(AffineError::ThroughSingularity(atlas.singularities[i].position));
            }
            for h in atlas.hits(w[0], v, -GEOM_EPS * 2.0, 1.0 - 2.0 * GEOM_EPS) {
                let slot = &mut inside[h.sing][h.cut];
                match *slot {
                    None => *slot = Some(h.side),
                    Some(entered) => {
                        *slot = None;
                        if entered != h.side {
                            let g = atlas.singularities[h.sing].cuts[h.cut].gluing;
                            let matrix = if entered == Side::Plus { g } else { inverse(g) };
                            crossings.push(Crossing { after: k, singularity: h.sing, cut: h.cut, entered, matrix });
                        }
                    }
                }
            }
        }
        Ok(AffinePath { points: pts.to_vec(), crossings, stop: Stop::Length })
    }

    /// Composite linear map of all crossings, first crossing applied first.
    pub fn holonomy(&self) -> Mat {
        self.crossings.iter().fold([[1, 0], [0, 1]], |m, c| mat_mul(c.matrix, m))
    }

    /// Insert `k − 1` evenly spaced points inside every straight segment.
    pub fn resample(&self, k: usize) -> AffinePath {
        let jumps: std::collections::BTreeSet<usize> = self.crossings.iter().map(|c| c.after).collect();
        let mut points = Vec::new();
        let mut index = vec![0; self.points.len()];
        for (i, p) in self.points.iter().enumerate() {
            index[i] = points.len();
            points.push(*p);
            if i + 1 < self.points.len() && !jumps.contains(&i) {
                let q = self.points[i + 1];
                for j in 1..k {
                    let t = j as f64 / k as f64;
                    points.push(add(*p, scale(sub(q, *p), t)));
                }
            }
        }
        let crossings = self.crossings.iter().map(|c| Crossing { after: index[c.after], ..c.clone() }).collect();
        AffinePath { points, crossings, stop: self.stop }
    }

    /// Straight pieces between jumps.
    pub fn pieces(&self) -> Vec<Vec<Point>> {
        let mut out = vec![Vec::new()];
        let jumps: std::collections::BTreeSet<usize> = self.crossings.iter().map(|c| c.after).collect();
        for (i, p) in self.points.iter().enumerate() {
            out.last_mut().unwrap().push(*p);
            if jumps.contains(&i) {
                out.push(Vec::new());
            }
        }
        out
    }
}

/// Apply the path's crossing matrices to `v` in order.
pub fn parallel_transport(atlas: &AffineAtlas, path: &AffinePath, v: [f64; 2]) -> Result<[f64; 2], AffineError> {
    for w in path.points.windows(2) {
        if let Some((i, _)) = atlas.apex_hit(w[0], sub(w[1], w[0]), 0.0, 1.0) {
            return Err(AffineError::ThroughSingularity(atlas.singularities[i].position));
        }
    }
    if path.points.iter().any(|p| atlas.is_singular(*p)) {
        return Err(AffineError::ThroughSingularity(*path.points.iter().find(|p| atlas.is_singular(**p)).unwrap()));
    }
    Ok(path.crossings.iter().fold(v, |v, c| apply(c.matrix, v)))
}

/// Follow the affine line from `start` with direction `dir` for parameter length `length`.
/// At a boundary ray the line jumps to the identified point of the partner ray and its
/// direction is multiplied by the gluing. Stops early at a singular point.
pub fn trace_affine_line(atlas: &AffineAtlas, start: Point, dir: [f64; 2], length: f64) -> Result<AffinePath, AffineError> {
    if atlas.is_singular(start) {
        return Err(AffineError::ThroughSingularity(start));
    }
    if atlas.in_deleted_sector(start) {
        return Err(AffineError::InDeletedSector(start));
    }
    if dir[0] == 0.0 && dir[1] == 0.0 {
        return Err(AffineError::Degenerate("zero direction".into()));
    }
    let mut p = start;
    let mut v = dir;
    let mut left = length;
    let mut points = vec![p];
    let mut crossings = Vec::new();
    for _ in 0..10_000 {
        let apex = atlas.apex_hit(p, v, 0.0, left);
        let hit = atlas.hits(p, v, 0.0, left).into_iter().next();
        match (apex, hit) {
            (Some((i, ta)), h) if h.map_or(true, |h| ta <= h.tau + GEOM_EPS) => {
                points.push(atlas.singularities[i].position);
                return Ok(AffinePath { points, crossings, stop: Stop::Singularity(i) });
            }
            (_, Some(h)) => {
                let s = &atlas.singularities[h.sing];
                let c = &s.cuts[h.cut];
                let (matrix, to) = match h.side {
                    Side::Plus => (c.gluing, add(s.position, scale(to_f(c.d_minus), h.s))),
                    Side::Minus => (inverse(c.gluing), add(s.position, scale(to_f(c.d_plus), h.s))),
                };
                points.push(add(p, scale(v, h.tau)));
                crossings.push(Crossing { after: points.len() - 1, singularity: h.sing, cut: h.cut, entered: h.side, matrix });
                points.push(to);
                p = to;
                v = apply(matrix, v);
                left -= h.tau;
            }
            _ => {
                points.push(add(p, scale(v, left)));
                return Ok(AffinePath { points, crossings, stop: Stop::Length });
            }
        }
    }
    Err(AffineError::Degenerate("too many crossings".into()))
}

/// Hausdorff distance between two polylines, measured from vertices to segments.
pub fn hausdorff(a: &AffinePath, b: &AffinePath) -> f64 {
    fn one_way(a: &AffinePath, b: &AffinePath) -> f64 {
        let segs: Vec<(Point, Point)> = b.pieces().iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()).collect();
        a.points
            .iter()
            .map(|p| {
                segs.iter()
                    .map(|(u, w)| {
                        let d = sub(*w, *u);
                        let dd = d[0] * d[0] + d[1] * d[1];
                        let t = if dd == 0.0 { 0.0 } else { (((p[0] - u[0]) * d[0] + (p[1] - u[1]) * d[1]) / dd).clamp(0.0, 1.0) };
                        let q = add(*u, scale(d, t));
                        (p[0] - q[0]).hypot(p[1] - q[1])
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
    one_way(a, b).max(one_way(b, a))
}

/// Affine coordinates of one base point, continued from `O` through the upper half plane.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SyzPoint<T> {
    pub q: Complex<T>,
    pub x_a: T,
    pub x_b: T,
    pub x: T,
    pub y: T,
    pub error: T,
    pub converged: bool,
}

/// Sample the affine chart of the base at each grid point with `Im q ≥ 0`. Each point is
/// reached along the straight path from `iε`, so it stays in the upper half plane.
pub fn sample_syz_base<T: Real>(engine: &PeriodEngine<T>, grid: &[Complex<T>]) -> Result<Vec<SyzPoint<T>>, AffineError> {
    use rayon::prelude::*;
    let start = Complex::new(T::zero(), engine.singular_radius);
    let (a, b) = engine.standard_cycles(start, Region::Upper)?;
    grid.par_iter()
        .map(|&q| {
            if q.im < T::zero() {
                return Err(AffineError::Degenerate(format!("grid point {} below the real axis", q)));
            }
            let r = engine.continue_periods(&[start, q], &[a.clone(), b.clone()], Some(cx(0.0, 0.0)))?;
            let x_a = -r.values[0].im;
            let x_b = -r.values[1].im;
            Ok(SyzPoint { q, x_a, x_b, x: x_a - x_b, y: x_a + x_b, error: r.errors[0].max(r.errors[1]), converged: r.converged })
        })
        .collect()
}

/// Rectangular grid `re0:re1:n × im0:im1:m`, skipping critical values.
pub fn q_grid<T: Real>(re: (f64, f64, usize), im: (f64, f64, usize)) -> Vec<Complex<T>> {
    let lin = |(a, b, n): (f64, f64, usize), k: usize| if n <= 1 { a } else { a + (b - a) * k as f64 / (n - 1) as f64 };
    let mut out = Vec::new();
    for j in 0..im.2 {
        for k in 0..re.2 {
            let q = Complex::new(lin(re, k), lin(im, j));
            let crit = [-4.0, 0.0, 4.0].iter().any(|c| (q - Complex::new(*c, 0.0)).norm() < 1e-9);
            if !crit {
                out.push(Complex::new(T::lit(q.re), T::lit(q.im)));
            }
        }
    }
    out
}

/// Residuals of one locus after applying `Ψ`, in units of `|O′A′₋|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImageResidual {
    pub locus: Locus,
    pub samples: usize,
    pub max_residual: f64,
    /// Whether every image also lies on the correct side (segment, or ray half-line).
    pub on_target: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    /// `(x, y)` of `A₋`.
    pub anchor: Point,
    /// `q` with `C = l_{A₋,∂b} ∩ l_{O,∂(−a+b)}`, on the positive imaginary axis.
    pub c_q: Option<f64>,
    pub c_point: Option<Point>,
    /// Linear part of `Ψ` fitted on `A₋ ↦ A′₋`, `C ↦ (0,1)`.
    pub psi: [[f64; 2]; 2],
    /// `1 / (2|x_A|)`.
    pub lambda: f64,
    /// `|Ψ − λ·id| / λ`.
    pub psi_deviation: f64,
    pub images: Vec<ImageResidual>,
    pub tolerance: f64,
    pub pass: bool,
}

fn shift(s: &LocusReport<f64>, anchor: Option<Point>) -> Vec<Point> {
    let off = anchor.unwrap_or([0.0, 0.0]);
    s.samples.iter().map(|p| [p.x + off[0], p.y + off[1]]).collect()
}

/// Fit `Ψ` on the anchor data and measure how well the sampled lines land on the cuts and
/// edges of `B′_CPS`.
#[allow(non_snake_case)]
pub fn compare_to_BCPS_prime(engine: &PeriodEngine<f64>, atlas: &AffineAtlas, n: usize) -> Result<ComparisonReport, AffineError> {
    let a_minus = atlas
        .singularities
        .iter()
        .find(|s| s.name == "A-")
        .map(|s| s.position)
        .ok_or_else(|| AffineError::Degenerate("atlas has no A- singularity".into()))?;
    let anchor = engine.anchor_a_minus()?;
    let a = [anchor.x, anchor.y];
    let seg = engine.affine_locus(Locus::NegativeSegment, n)?;
    let axis = engine.affine_locus(Locus::ImaginaryAxis, n)?;
    let ray = engine.affine_locus(Locus::LeftRay, n)?;

    // C: x_b(is) = x_b(A₋) on the imaginary axis. Bracket from the samples, then bisect.
    let target = anchor.x_b;
    let c_q = axis.samples.windows(2).find(|w| (w[0].x_b - target) * (w[1].x_b - target) <= 0.0).map(|w| (w[0].q.im, w[1].q.im));
    let (c_q, c_point) = match c_q {
        Some((mut lo, mut hi)) => {
            let start = Complex::new(0.0, engine.singular_radius);
            let (ca, cb) = engine.standard_cycles(start, Region::Upper)?;
            let xb = |s: f64| -> Result<(f64, f64), AffineError> {
                let r = engine.continue_periods(&[start, Complex::new(0.0, s)], &[ca.clone(), cb.clone()], Some(cx(0.0, 0.0)))?;
                Ok((-r.values[0].im, -r.values[1].im))
            };
            let f_lo = xb(lo)?.1 - target;
            for _ in 0..30 {
                let mid = 0.5 * (lo + hi);
                let f = xb(mid)?.1 - target;
                if (f < 0.0) == (f_lo < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let s = 0.5 * (lo + hi);
            let (x_a, x_b) = xb(s)?;
            (Some(s), Some([x_a - x_b, x_a + x_b]))
        }
        None => (None, None),
    };
    let c_point = match c_point {
        Some(c) => c,
        None => {
            return Ok(ComparisonReport {
                anchor: a,
                c_q: None,
                c_point: None,
                psi: [[0.0; 2]; 2],
                lambda: 0.0,
                psi_deviation: f64::INFINITY,
                images: Vec::new(),
                tolerance: 1e-6,
                pass: false,
            })
        }
    };
    // Ψ·[A C] = [A′₋ C′].
    let dt = a[0] * c_point[1] - a[1] * c_point[0];
    if dt.abs() < 1e-9 * (a[0].hypot(a[1]) * c_point[0].hypot(c_point[1])) {
        return Err(AffineError::Degenerate("anchors A- and C are collinear with O".into()));
    }
    let inv = [[c_point[1] / dt, -c_point[0] / dt], [-a[1] / dt, a[0] / dt]];
    let img = [[a_minus[0], 0.0], [a_minus[1], 1.0]];
    let mut psi = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            psi[i][j] = img[i][0] * inv[0][j] + img[i][1] * inv[1][j];
        }
    }
    let lambda = 1.0 / (2.0 * anchor.x.abs());
    let psi_deviation = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| (psi[i][j] - if i == j { lambda } else { 0.0 }).abs()).fold(0.0, f64::max) / lambda;
    let map = |p: Point| [psi[0][0] * p[0] + psi[0][1] * p[1], psi[1][0] * p[0] + psi[1][1] * p[1]];
    let unit = a_minus[0].hypot(a_minus[1]);

    let mut images = Vec::new();
    // O A₋ onto O′A′₋: distance to the line through O′ and A′₋, parameter in [0, 1].
    let pts: Vec<Point> = shift(&seg, None).into_iter().map(map).collect();
    let dir = scale(a_minus, 1.0 / unit);
    images.push(ImageResidual {
        locus: Locus::NegativeSegment,
        samples: pts.len(),
        max_residual: pts.iter().map(|p| cross(dir, *p).abs() / unit).fold(0.0, f64::max),
        on_target: pts.iter().all(|p| {
            let t = (p[0] * dir[0] + p[1] * dir[1]) / unit;
            (-1e-9..=1.0 + 1e-9).contains(&t)
        }),
    });
    // iℝ₊ onto the upward cut from O′.
    let pts: Vec<Point> = shift(&axis, None).into_iter().map(map).collect();
    images.push(ImageResidual {
        locus: Locus::ImaginaryAxis,
        samples: pts.len(),
        max_residual: pts.iter().map(|p| p[0].abs() / unit).fold(0.0, f64::max),
        on_target: pts.iter().all(|p| p[1] > 0.0),
    });
    // (−∞, −4) onto the upward cut from A′₋.
    let pts: Vec<Point> = shift(&ray, Some(a)).into_iter().map(map).collect();
    images.push(ImageResidual {
        locus: Locus::LeftRay,
        samples: pts.len(),
        max_residual: pts.iter().map(|p| (p[0] - a_minus[0]).abs() / unit).fold(0.0, f64::max),
        on_target: pts.iter().all(|p| p[1] > a_minus[1]),
    });
    let tolerance = 1e-6;
    let pass = seg.converged
        && axis.converged
        && ray.converged
        && images.iter().all(|r| r.on_target && r.max_residual <= tolerance)
        && psi_deviation <= tolerance;
    Ok(ComparisonReport { anchor: a, c_q, c_point: Some(c_point), psi, lambda, psi_deviation, images, tolerance, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabolic_gluing_maps_rays() {
        let c = CutPair::parabolic([1, 0], [0, 1]);
        assert_eq!(c.gluing, [[0, -1], [1, 2]]);
        let c = CutPair::parabolic([0, 1], [-1, 0]);
        assert_eq!(c.gluing, [[2, -1], [1, 0]]);
    }

    #[test]
    fn atlases_validate() {
        build_B_CPS().validate().unwrap();
        build_B_CPS_prime().validate().unwrap();
    }

    #[test]
    fn local_monodromies_match_declared() {
        for atlas in [build_B_CPS(), build_B_CPS_prime()] {
            for i in 0..atlas.len() {
                assert_eq!(atlas.local_monodromy(i).unwrap(), atlas.singularities[i].monodromy(), "{}", atlas.singularities[i].name);
            }
        }
    }

    #[test]
    fn large_loops() {
        assert_eq!(parabolic_class(build_B_CPS().large_loop_monodromy(None).unwrap()), Some(8));
        let bp = build_B_CPS_prime();
        assert_eq!(parabolic_class(bp.large_loop_monodromy(None).unwrap()), Some(8));
        // Based in the gap between the cuts of O′ and A′₋.
        let th = 95f64.to_radians();
        assert_eq!(bp.large_loop_monodromy(Some(th)).unwrap(), [[1, 0], [-8, 1]]);
    }

    #[test]
    fn homology_to_affine() {
        assert_eq!(affine_monodromy_from_periods([[1, 0], [2, 1]]), Some([[2, -1], [1, 0]]));
        assert_eq!(affine_monodromy_from_periods([[1, -4], [0, 1]]), Some([[-1, -2], [2, 3]]));
        assert_eq!(affine_monodromy_from_periods([[1, 1], [0, 1]]), None);
    }

    #[test]
    fn sector_membership() {
        let b = build_B_CPS();
        assert!(b.in_deleted_sector([1.0, 1.0]));
        assert!(!b.in_deleted_sector([0.0, 0.0]));
        assert!(!b.in_deleted_sector([0.5, 1.0]));
    }

    #[test]
    fn crossing_l4_minus_refracts() {
        let b = build_B_CPS();
        let path = trace_affine_line(&b, [1.0, 0.0], [0.0, -1.0], 1.0).unwrap();
        assert_eq!(path.crossings.len(), 1);
        let c = &path.crossings[0];
        assert_eq!(c.singularity, 3);
        assert_eq!(c.entered, Side::Minus);
        assert_eq!(path.points[1], [1.0, -0.5]);
        assert_eq!(path.points[2], [0.5, -1.0]);
        assert_eq!(apply(c.matrix, [0.0, -1.0]), [-1.0, -2.0]);
    }
}
