//! Exact lattice, polytope and fan computations in rank two.
//!
//! Vertices are stored as exact rationals so that duals of non-reflexive polygons stay
//! representable; reflexivity is a property, not a precondition.

use crate::laurent::LaurentPolynomial;
use crate::scalar::Int;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("degenerate polytope (fewer than three extreme points)")]
    Degenerate,
    #[error("polytope has non-integral vertices")]
    NotIntegral,
    #[error("not an anticanonical section: <n,rho> = {pairing} < -1 for n = {n:?}")]
    NotAnticanonical { n: [i64; 2], pairing: String },
    #[error("ray index {0} out of range")]
    RayIndex(usize),
    #[error("cone at ray {0} is not smooth (|det| = {1})")]
    NotSmooth(usize, String),
    #[error("restriction to divisor {ray} has {terms} monomials and is not of the form c*s^a*(s-r)^k")]
    NotBinomialPower { ray: usize, terms: usize },
    #[error("rays are not in counterclockwise order or do not span a complete fan")]
    BadFan,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A vector in ℤ² (either N or its dual M; the pairing is the standard dot product).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector<Z> {
    pub x: Z,
    pub y: Z,
}

impl<Z: Int> LatticeVector<Z> {
    pub fn new(x: Z, y: Z) -> Self {
        LatticeVector { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        LatticeVector { x: Z::from_i64(x).unwrap(), y: Z::from_i64(y).unwrap() }
    }

    pub fn to_i64(&self) -> [i64; 2] {
        [self.x.to_i64().expect("fits i64"), self.y.to_i64().expect("fits i64")]
    }

    pub fn dot(&self, o: &Self) -> Z {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn det(&self, o: &Self) -> Z {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn add(&self, o: &Self) -> Self {
        LatticeVector::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        LatticeVector::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn scale(&self, k: &Z) -> Self {
        LatticeVector::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn gcd(&self) -> Z {
        self.x.gcd(&self.y)
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd().is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Divide out the content.
    pub fn primitive(&self) -> Self {
        let g = self.gcd();
        if g.is_zero() {
            return self.clone();
        }
        LatticeVector::new(self.x.clone() / g.clone(), self.y.clone() / g)
    }

    /// Rotate by +90°.
    pub fn perp(&self) -> Self {
        LatticeVector::new(-self.y.clone(), self.x.clone())
    }

    pub fn to_rational(&self) -> RatPoint<Z> {
        [Ratio::from_integer(self.x.clone()), Ratio::from_integer(self.y.clone())]
    }
}

/// A point with exact rational coordinates.
pub type RatPoint<Z> = [Ratio<Z>; 2];

fn rdet<Z: Int>(a: &RatPoint<Z>, b: &RatPoint<Z>) -> Ratio<Z> {
    a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
}

fn rsub<Z: Int>(a: &RatPoint<Z>, b: &RatPoint<Z>) -> RatPoint<Z> {
    [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone()]
}

fn orient<Z: Int>(o: &RatPoint<Z>, a: &RatPoint<Z>, b: &RatPoint<Z>) -> Ratio<Z> {
    rdet(&rsub(a, o), &rsub(b, o))
}

/// Half-turn angular order key: which half-plane, then cross product comparisons.
fn angle_cmp<Z: Int>(a: &LatticeVector<Z>, b: &LatticeVector<Z>) -> Ordering {
    let half = |v: &LatticeVector<Z>| -> u8 {
        if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let d = a.det(b);
        if d.is_positive() {
            Ordering::Less
        } else if d.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Convex polygon with vertices in counterclockwise order, starting from the
/// lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope<Z: Clone + num_integer::Integer> {
    pub vertices: Vec<RatPoint<Z>>,
}

impl<Z: Int> LatticePolytope<Z> {
    /// Convex hull of integer points.
    pub fn from_points(points: &[LatticeVector<Z>]) -> Result<Self, ToricError> {
        let pts: Vec<RatPoint<Z>> = points.iter().map(|p| p.to_rational()).collect();
        Self::hull(pts)
    }

    pub fn from_i64(points: &[[i64; 2]]) -> Result<Self, ToricError> {
        let v: Vec<LatticeVector<Z>> = points.iter().map(|p| LatticeVector::from_i64(p[0], p[1])).collect();
        Self::from_points(&v)
    }

    /// Convex hull (monotone chain), dropping collinear boundary points.
    pub fn hull(mut pts: Vec<RatPoint<Z>>) -> Result<Self, ToricError> {
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(ToricError::Degenerate);
        }
        let mut lower: Vec<RatPoint<Z>> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<RatPoint<Z>> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return Err(ToricError::Degenerate);
        }
        // Monotone chain starts at the lexicographic minimum already.
        Ok(LatticePolytope { vertices: lower })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| v[0].is_integer() && v[1].is_integer())
    }

    /// Integer vertices, if all vertices are integral.
    pub fn integer_vertices(&self) -> Result<Vec<LatticeVector<Z>>, ToricError> {
        self.vertices
            .iter()
            .map(|v| {
                if v[0].is_integer() && v[1].is_integer() {
                    Ok(LatticeVector::new(v[0].to_integer(), v[1].to_integer()))
                } else {
                    Err(ToricError::NotIntegral)
                }
            })
            .collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&RatPoint<Z>, &RatPoint<Z>)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn contains_origin_strictly(&self) -> bool {
        let o = [Ratio::zero(), Ratio::zero()];
        self.edges().all(|(a, b)| orient(a, b, &o).is_positive())
    }

    /// Point-in-polygon including the boundary.
    pub fn contains(&self, p: &RatPoint<Z>) -> bool {
        self.edges().all(|(a, b)| !orient(a, b, p).is_negative())
    }

    pub fn contains_strictly(&self, p: &RatPoint<Z>) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p).is_positive())
    }

    /// All lattice points (bounding-box scan).
    pub fn lattice_points(&self) -> Vec<LatticeVector<Z>> {
        let floor = |r: &Ratio<Z>| r.floor().to_integer();
        let ceil = |r: &Ratio<Z>| r.ceil().to_integer();
        let xs: Vec<&Ratio<Z>> = self.vertices.iter().map(|v| &v[0]).collect();
        let ys: Vec<&Ratio<Z>> = self.vertices.iter().map(|v| &v[1]).collect();
        let x0 = ceil(xs.iter().min().unwrap());
        let x1 = floor(xs.iter().max().unwrap());
        let y0 = ceil(ys.iter().min().unwrap());
        let y1 = floor(ys.iter().max().unwrap());
        let mut out = Vec::new();
        let mut x = x0;
        while x <= x1 {
            let mut y = y0.clone();
            while y <= y1 {
                let p = LatticeVector::new(x.clone(), y.clone());
                if self.contains(&p.to_rational()) {
                    out.push(p);
                }
                y = y + Z::one();
            }
            x = x + Z::one();
        }
        out
    }

    pub fn boundary_lattice_points(&self) -> Vec<LatticeVector<Z>> {
        self.lattice_points().into_iter().filter(|p| !self.contains_strictly(&p.to_rational())).collect()
    }

    pub fn interior_lattice_points(&self) -> Vec<LatticeVector<Z>> {
        self.lattice_points().into_iter().filter(|p| self.contains_strictly(&p.to_rational())).collect()
    }

    /// Reflexive: integral, origin is the unique interior lattice point, and the dual is integral.
    pub fn is_reflexive(&self) -> bool {
        if !self.is_integral() || !self.contains_origin_strictly() {
            return false;
        }
        let interior = self.interior_lattice_points();
        if interior.len() != 1 || !interior[0].is_zero() {
            return false;
        }
        dual_polytope(self).map(|d| d.is_integral()).unwrap_or(false)
    }

    /// Every edge has lattice length one (the smoothness condition on the dual side).
    pub fn has_unit_edges(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        self.edges().all(|(a, b)| {
            let d = rsub(b, a);
            d[0].to_integer().gcd(&d[1].to_integer()).is_one()
        })
    }

    /// Same polygon, up to the canonical vertex ordering.
    pub fn same_as(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

/// Polar dual `{n : <n,m> >= -1 for all m in Δ}`.
pub fn dual_polytope<Z: Int>(delta: &LatticePolytope<Z>) -> Result<LatticePolytope<Z>, ToricError> {
    if !delta.contains_origin_strictly() {
        return Err(ToricError::OriginNotInterior);
    }
    // Each edge of Δ gives the vertex of ∇ with <n,a> = <n,b> = -1.
    let mut verts = Vec::new();
    for (a, b) in delta.edges() {
        let d = rdet(a, b);
        let nx = (a[1].clone() - b[1].clone()) / d.clone();
        let ny = (b[0].clone() - a[0].clone()) / d;
        verts.push([nx, ny]);
    }
    LatticePolytope::hull(verts)
}

/// Complete fan in the plane, rays primitive and counterclockwise; maximal cones are
/// consecutive pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan<Z> {
    pub rays: Vec<LatticeVector<Z>>,
}

impl<Z: Int> Fan<Z> {
    /// Validate and canonicalize: rays sorted by angle starting from the positive x-axis.
    pub fn new(mut rays: Vec<LatticeVector<Z>>) -> Result<Self, ToricError> {
        if rays.len() < 3 || rays.iter().any(|r| !r.is_primitive()) {
            return Err(ToricError::BadFan);
        }
        rays.sort_by(angle_cmp);
        let f = Fan { rays };
        if !f.is_complete() {
            return Err(ToricError::BadFan);
        }
        Ok(f)
    }

    pub fn from_i64(rays: &[[i64; 2]]) -> Result<Self, ToricError> {
        Self::new(rays.iter().map(|r| LatticeVector::from_i64(r[0], r[1])).collect())
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Consecutive rays strictly turn left and together go once around.
    pub fn is_complete(&self) -> bool {
        let n = self.rays.len();
        (0..n).all(|i| self.rays[i].det(&self.rays[(i + 1) % n]).is_positive())
    }

    /// Index pairs of maximal cones.
    pub fn cones(&self) -> Vec<(usize, usize)> {
        let n = self.rays.len();
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    pub fn cone_det(&self, i: usize) -> Z {
        let n = self.rays.len();
        self.rays[i].det(&self.rays[(i + 1) % n])
    }

    pub fn is_smooth(&self) -> bool {
        (0..self.rays.len()).all(|i| self.cone_det(i).is_one())
    }

    /// Smooth at both cones adjacent to ray `i`.
    pub fn is_smooth_at_ray(&self, i: usize) -> bool {
        let n = self.rays.len();
        self.cone_det(i).is_one() && self.cone_det((i + n - 1) % n).is_one()
    }
}

/// Inward primitive facet normals, counterclockwise from the positive x-axis.
pub fn normal_fan<Z: Int>(delta: &LatticePolytope<Z>) -> Result<Fan<Z>, ToricError> {
    if delta.len() < 3 {
        return Err(ToricError::Degenerate);
    }
    let mut rays = Vec::new();
    for (a, b) in delta.edges() {
        let e = rsub(b, a);
        // Clear denominators, then rotate left (interior is on the left of a ccw edge).
        let l = e[0].denom().lcm(e[1].denom());
        let ex = (e[0].clone() * Ratio::from_integer(l.clone())).to_integer();
        let ey = (e[1].clone() * Ratio::from_integer(l)).to_integer();
        rays.push(LatticeVector::new(ex, ey).perp().primitive());
    }
    Fan::new(rays)
}

/// `W = Σ_{n ∈ ∇₀} t^n` over the vertices of ∇.
pub fn superpotential_from_polytope<Z: Int>(nabla: &LatticePolytope<Z>) -> Result<LaurentPolynomial<Z>, ToricError> {
    let verts = nabla.integer_vertices()?;
    Ok(LaurentPolynomial::from_terms(verts.iter().map(|v| (v.to_i64(), Z::one()))))
}

/// Exponents of the homogeneous monomial of a section, one per ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousMonomial<Z> {
    pub exponents: Vec<Z>,
}

fn pairing<Z: Int>(n: &[i64; 2], rho: &LatticeVector<Z>) -> Z {
    Z::from_i64(n[0]).unwrap() * rho.x.clone() + Z::from_i64(n[1]).unwrap() * rho.y.clone()
}

/// `t^n ↦ Π w_ρ^{<n,ρ>+1}`.
pub fn homogenize_section<Z: Int>(n: &LatticeVector<Z>, fan: &Fan<Z>) -> Result<HomogeneousMonomial<Z>, ToricError> {
    let mut exps = Vec::with_capacity(fan.len());
    for rho in &fan.rays {
        let p = n.dot(rho);
        if p < -Z::one() {
            return Err(ToricError::NotAnticanonical { n: n.to_i64(), pairing: p.to_string() });
        }
        exps.push(p + Z::one());
    }
    Ok(HomogeneousMonomial { exponents: exps })
}

fn check_anticanonical<Z: Int>(w: &LaurentPolynomial<Z>, fan: &Fan<Z>) -> Result<(), ToricError> {
    for (n, _) in w.terms() {
        for rho in &fan.rays {
            let p = pairing(n, rho);
            if p < -Z::one() {
                return Err(ToricError::NotAnticanonical { n: *n, pairing: p.to_string() });
            }
        }
    }
    Ok(())
}

/// Per-cone result of the fixed-point avoidance check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeCheck {
    pub rays: (usize, usize),
    pub surviving_monomials: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub cones: Vec<ConeCheck>,
    pub all_pass: bool,
}

/// For each maximal cone (ρ, μ), restrict the homogenized W to `w_ρ = w_μ = 0`; the torus-fixed
/// point is avoided iff exactly one monomial survives.
pub fn check_fixed_point_avoidance<Z: Int>(
    w: &LaurentPolynomial<Z>,
    fan: &Fan<Z>,
) -> Result<FixedPointReport, ToricError> {
    check_anticanonical(w, fan)?;
    let minus_one = -Z::one();
    let mut cones = Vec::new();
    for (i, j) in fan.cones() {
        let surviving = w
            .terms()
            .filter(|(n, _)| pairing(n, &fan.rays[i]) == minus_one && pairing(n, &fan.rays[j]) == minus_one)
            .count();
        // A constant W has no monomial vanishing anywhere: it never meets the boundary.
        let constant = w.len() == 1 && w.coeff([0, 0]) != Z::zero();
        cones.push(ConeCheck { rays: (i, j), surviving_monomials: surviving, pass: surviving == 1 || constant });
    }
    let all_pass = cones.iter().all(|c| c.pass);
    Ok(FixedPointReport { cones, all_pass })
}

/// Root of W restricted to a toric divisor, in the divisor coordinate `s = t^e` with
/// `e` the primitive vector along the facet (ray rotated by +90°).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRoot<Z: Clone + num_integer::Integer> {
    pub ray: usize,
    pub root: Ratio<Z>,
    pub multiplicity: u32,
}

/// Restrict W to `D_ρ`: keep the monomials with `<n,ρ> = -1`, write them as `Σ c_k s^k` and
/// return the unique root when the restriction is `c·s^a·(s−r)^k`.
pub fn boundary_intersection_point<Z: Int>(
    w: &LaurentPolynomial<Z>,
    fan: &Fan<Z>,
    ray: usize,
) -> Result<DivisorRoot<Z>, ToricError> {
    if ray >= fan.len() {
        return Err(ToricError::RayIndex(ray));
    }
    check_anticanonical(w, fan)?;
    let rho = &fan.rays[ray];
    let e = rho.perp();
    let minus_one = -Z::one();
    // Facet points differ by integer multiples of e, so k = <n - n0, e> / <e, e> is exact.
    let ee = e.dot(&e);
    let mut coeffs: Vec<(Z, Z)> = Vec::new();
    let mut base: Option<[i64; 2]> = None;
    for (n, c) in w.terms() {
        if pairing(n, rho) == minus_one {
            let n0 = *base.get_or_insert(*n);
            let k = pairing(&[n[0] - n0[0], n[1] - n0[1]], &e) / ee.clone();
            coeffs.push((k, c.clone()));
        }
    }
    let terms = coeffs.len();
    if terms < 2 {
        return Err(ToricError::NotBinomialPower { ray, terms });
    }
    coeffs.sort_by(|a, b| a.0.cmp(&b.0));
    let kmin = coeffs[0].0.clone();
    let deg = (coeffs[terms - 1].0.clone() - kmin.clone()).to_u32().unwrap();
    let mut poly = vec![Z::zero(); deg as usize + 1];
    for (k, c) in coeffs {
        let idx = (k - kmin.clone()).to_usize().unwrap();
        poly[idx] = c;
    }
    // c_m (s - r)^m: c_{m-1} = -m r c_m.
    let m = deg as usize;
    let cm = Ratio::from_integer(poly[m].clone());
    let root = -Ratio::from_integer(poly[m - 1].clone()) / (cm.clone() * Ratio::from_integer(Z::from_usize(m).unwrap()));
    // Verify every coefficient against the binomial expansion.
    let mut binom = Z::one();
    for j in 0..=m {
        // coefficient of s^(m-j) is c_m * C(m,j) * (-r)^j
        let expected = cm.clone() * Ratio::from_integer(binom.clone()) * pow_ratio(&(-root.clone()), j);
        if Ratio::from_integer(poly[m - j].clone()) != expected {
            return Err(ToricError::NotBinomialPower { ray, terms });
        }
        binom = binom * Z::from_usize(m - j).unwrap() / Z::from_usize(j + 1).unwrap();
    }
    Ok(DivisorRoot { ray, root, multiplicity: deg })
}

fn pow_ratio<Z: Int>(r: &Ratio<Z>, k: usize) -> Ratio<Z> {
    let mut acc = Ratio::one();
    for _ in 0..k {
        acc = acc * r.clone();
    }
    acc
}

/// Roots on every divisor of the fan.
pub fn all_boundary_points<Z: Int>(
    w: &LaurentPolynomial<Z>,
    fan: &Fan<Z>,
) -> Vec<Result<DivisorRoot<Z>, ToricError>> {
    (0..fan.len()).map(|i| boundary_intersection_point(w, fan, i)).collect()
}

/// Bundled reflexive polygons of the nine toric del Pezzo mirrors, as `(file name, text)`.
pub const FIXTURES: &[(&str, &str)] = &[
    ("dp9.txt", include_str!("../fixtures/dp9.txt")),
    ("dp8.txt", include_str!("../fixtures/dp8.txt")),
    ("square.txt", include_str!("../fixtures/square.txt")),
    ("dp7.txt", include_str!("../fixtures/dp7.txt")),
    ("dp6.txt", include_str!("../fixtures/dp6.txt")),
    ("dp5.txt", include_str!("../fixtures/dp5.txt")),
    ("dp4.txt", include_str!("../fixtures/dp4.txt")),
    ("dp4-prime.txt", include_str!("../fixtures/dp4-prime.txt")),
    ("dp3.txt", include_str!("../fixtures/dp3.txt")),
];

/// Read `x y` integer pairs, one per line; `#` starts a comment.
pub fn parse_points(text: &str) -> Result<Vec<[i64; 2]>, ToricError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        let bad = |msg: String| ToricError::Parse { line: k + 1, msg };
        if parts.len() != 2 {
            return Err(bad(format!("expected two integers, got {:?}", line)));
        }
        let x = parts[0].parse::<i64>().map_err(|e| bad(e.to_string()))?;
        let y = parts[1].parse::<i64>().map_err(|e| bad(e.to_string()))?;
        out.push([x, y]);
    }
    Ok(out)
}

/// `{vertices, rays, reflexive}` for a polygon and its normal fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSummary {
    pub vertices: Vec<[String; 2]>,
    pub rays: Vec<[i64; 2]>,
    pub reflexive: bool,
}

pub fn summarize<Z: Int>(delta: &LatticePolytope<Z>) -> Result<PolytopeSummary, ToricError> {
    let fan = normal_fan(delta)?;
    Ok(PolytopeSummary {
        vertices: delta.vertices.iter().map(|v| [v[0].to_string(), v[1].to_string()]).collect(),
        rays: fan.rays.iter().map(|r| r.to_i64()).collect(),
        reflexive: delta.is_reflexive(),
    })
}

/// The `-1` check for a reflexive Δ: W is the vertex sum of ∇ = Δ*, restricted to every
/// divisor of the normal fan of ∇.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusOneReport {
    pub delta: PolytopeSummary,
    pub nabla: PolytopeSummary,
    pub superpotential: String,
    pub roots: Vec<Option<String>>,
    pub errors: Vec<Option<String>>,
    pub fixed_points: FixedPointReport,
    pub all_minus_one: bool,
    pub pass: bool,
}

pub fn minus_one_report<Z: Int>(delta: &LatticePolytope<Z>) -> Result<MinusOneReport, ToricError> {
    let nabla = dual_polytope(delta)?;
    let w = superpotential_from_polytope(&nabla)?;
    let fan = normal_fan(&nabla)?;
    let res = all_boundary_points(&w, &fan);
    let minus_one = Ratio::from_integer(-Z::one());
    let all_minus_one = res.iter().all(|r| matches!(r, Ok(d) if d.root == minus_one));
    let fixed_points = check_fixed_point_avoidance(&w, &fan)?;
    let pass = all_minus_one && fixed_points.all_pass;
    Ok(MinusOneReport {
        delta: summarize(delta)?,
        nabla: summarize(&nabla)?,
        superpotential: w.to_string(),
        roots: res.iter().map(|r| r.as_ref().ok().map(|d| d.root.to_string())).collect(),
        errors: res.iter().map(|r| r.as_ref().err().map(|e| e.to_string())).collect(),
        fixed_points,
        all_minus_one,
        pass,
    })
}
