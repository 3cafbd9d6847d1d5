use super::quad::{integrate, QuadResult};
use super::{cx, ramification_quartic, raw_roots, PeriodEngine, PeriodError};
use crate::scalar::Real;
use num_complex::Complex;
use serde::Serialize;

/// Lift of a polyline in the t-plane joining two branch points.
///
/// `vertices[0]` and `vertices[last]` are `roots[start]` and `roots[end]`; interior vertices
/// avoid all branch points. The sheet is fixed by the value of `√P` at the interior vertex
/// `seed` and continued analytically from there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CyclePath<T> {
    pub name: String,
    pub q: Complex<T>,
    /// Tracked branch points: `[0]`, `[1]` solve the first factor, `[2]`, `[3]` the second.
    pub roots: [Complex<T>; 4],
    pub start: usize,
    pub end: usize,
    pub vertices: Vec<Complex<T>>,
    pub seed: usize,
    pub seed_sqrt: Complex<T>,
}

/// Result of integrating along a cycle, with the continued square root at every vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleEval<T> {
    /// `∫_{∂γ} ι_{∂/∂q} Ω̌ = 2i ∫_γ dt/s`.
    pub value: Complex<T>,
    pub error: T,
    pub converged: bool,
    pub vertex_sqrt: Vec<Complex<T>>,
    /// Phase of `s` just after leaving the start point.
    pub start_dir: Complex<T>,
    /// Phase of `s` just before reaching the end point.
    pub end_dir: Complex<T>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Piece<T> {
    /// `t = a + (b − a)x`, value carried is `s`.
    Line { a: Complex<T>, b: Complex<T> },
    /// `t = r + (z1 − r)u²`, value carried is `g = s/u`.
    End { r: Complex<T>, z1: Complex<T> },
}

impl<T: Real> Piece<T> {
    fn phi(&self, x: T) -> Complex<T> {
        match *self {
            Piece::Line { a, b } => a + (b - a) * x,
            Piece::End { r, z1 } => r + (z1 - r) * (x * x),
        }
    }

    fn square(&self, x: T, roots: &[Complex<T>]) -> Complex<T> {
        let t = self.phi(x);
        let mut f = match *self {
            Piece::Line { .. } => Complex::new(T::one(), T::zero()),
            Piece::End { r, z1 } => z1 - r,
        };
        for r in roots {
            f = f * (t - r);
        }
        f
    }

    fn weight(&self) -> Complex<T> {
        match *self {
            Piece::Line { a, b } => b - a,
            Piece::End { r, z1 } => (z1 - r) * T::lit(2.0),
        }
    }

    /// Next parameter towards `x1` such that `t` moves at most a quarter of the distance to
    /// the nearest branch point, which keeps every factor's argument change below 15°.
    fn step(&self, x: T, x1: T, roots: &[Complex<T>]) -> T {
        let t = self.phi(x);
        let d = roots.iter().map(|r| (t - r).norm()).fold(T::infinity(), T::min);
        let quarter = d * T::lit(0.25);
        match *self {
            Piece::Line { a, b } => {
                let dx = quarter / (b - a).norm();
                if x1 > x { (x + dx).min(x1) } else { (x - dx).max(x1) }
            }
            Piece::End { r, z1 } => {
                let du2 = quarter / (z1 - r).norm();
                if x1 > x {
                    (x * x + du2).sqrt().min(x1)
                } else {
                    let v = x * x - du2;
                    if v <= x1 * x1 { x1 } else { v.sqrt() }
                }
            }
        }
    }
}

pub(crate) struct Walk<T> {
    pub value: Complex<T>,
    pub integral: Complex<T>,
    pub error: T,
    pub converged: bool,
}

/// Continue the carried square root from `x0` to `x1`, optionally integrating
/// `weight / value` on the way.
pub(crate) fn walk<T: Real>(
    piece: Piece<T>,
    roots: &[Complex<T>],
    x0: T,
    v0: Complex<T>,
    x1: T,
    engine: Option<&PeriodEngine<T>>,
) -> Walk<T> {
    let mut x = x0;
    let mut v = v0;
    let mut fx = piece.square(x, roots);
    let w = piece.weight();
    let mut total = Complex::new(T::zero(), T::zero());
    let mut err = T::zero();
    let mut converged = true;
    let mut guard = 0usize;
    while x != x1 && guard < 1_000_000 {
        guard += 1;
        let xn = piece.step(x, x1, roots);
        if let Some(e) = engine {
            let (vref, fref) = (v, fx);
            let r: QuadResult<T> = integrate(
                |y| w / (vref * (piece.square(y, roots) / fref).sqrt()),
                x,
                xn,
                e.abs_tol * T::lit(0.1),
                e.rel_tol,
                e.max_depth,
            );
            total = total + r.value;
            err += r.error;
            converged &= r.converged;
        }
        let fn_ = piece.square(xn, roots);
        v = v * (fn_ / fx).sqrt();
        fx = fn_;
        x = xn;
    }
    Walk { value: v, integral: total, error: err, converged: converged && x == x1 }
}

fn unit_arc<T: Real>(from: f64, to: f64, n: usize) -> Vec<Complex<T>> {
    (0..=n)
        .map(|k| {
            let th = from + (to - from) * k as f64 / n as f64;
            cx(th.cos(), th.sin())
        })
        .collect()
}

impl<T: Real> CyclePath<T> {
    /// Branch points tracked in the order `[−i, i, −2−√3, −2+√3]` at `q = −2`.
    fn reference_roots() -> [Complex<T>; 4] {
        let mut r = raw_roots(cx::<T>(-2.0, 0.0));
        if r[0].im > r[1].im {
            r.swap(0, 1);
        }
        if r[2].re > r[3].re {
            r.swap(2, 3);
        }
        r
    }

    fn seeded(name: &str, start: usize, end: usize, mut vertices: Vec<Complex<T>>, seed: usize, at: Option<Complex<T>>) -> Self {
        let q = cx::<T>(-2.0, 0.0);
        let roots = Self::reference_roots();
        vertices[0] = roots[start];
        let last = vertices.len() - 1;
        vertices[last] = roots[end];
        if let Some(z) = at {
            vertices[seed] = z;
        }
        let seed_sqrt = ramification_quartic(q, vertices[seed]).sqrt();
        let mut c = CyclePath { name: name.into(), q, roots, start, end, vertices, seed, seed_sqrt };
        c.refine();
        c
    }

    /// `a` (from `−i` through `+1` to `i`), `b` (from `−i` through `−1` to `i`) and
    /// `c` (from `i` straight to `−2+√3`) at `q = −2`, seeded with the principal root at the
    /// middle vertex.
    pub fn reference() -> [Self; 3] {
        use std::f64::consts::FRAC_PI_2;
        let n = 16;
        let a = Self::seeded("a", 0, 1, unit_arc(-FRAC_PI_2, FRAC_PI_2, n), n / 2, Some(cx(1.0, 0.0)));
        let b = Self::seeded("b", 0, 1, unit_arc(-FRAC_PI_2, -3.0 * FRAC_PI_2, n), n / 2, Some(cx(-1.0, 0.0)));
        let roots = Self::reference_roots();
        let line: Vec<Complex<T>> = (0..=4).map(|k| roots[1] + (roots[3] - roots[1]) * T::lit(k as f64 / 4.0)).collect();
        let c = Self::seeded("c", 1, 3, line, 2, None);
        [a, b, c]
    }

    /// Same cycle with reversed orientation.
    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        c.vertices.reverse();
        c.seed = c.vertices.len() - 1 - c.seed;
        std::mem::swap(&mut c.start, &mut c.end);
        c.name = format!("-{}", self.name);
        c
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub(crate) fn other_roots(&self, skip: &[usize]) -> Vec<Complex<T>> {
        (0..4).filter(|k| !skip.contains(k)).map(|k| self.roots[k]).collect()
    }

    /// Root indices sitting at the ends of segment `j`.
    pub(crate) fn segment_roots(&self, j: usize) -> Vec<usize> {
        let mut v = Vec::new();
        if j == 0 {
            v.push(self.start);
        }
        if j + 1 == self.segment_count() {
            v.push(self.end);
        }
        v
    }

    /// Smallest distance from any segment to a branch point that is not its endpoint.
    pub fn clearance(&self) -> T {
        let mut best = T::infinity();
        for j in 0..self.segment_count() {
            let skip = self.segment_roots(j);
            for r in self.other_roots(&skip) {
                best = best.min(point_segment_distance(r, self.vertices[j], self.vertices[j + 1]));
            }
        }
        best
    }

    /// Sign of the continued root relative to the principal root at each segment midpoint.
    pub fn sheet_labels(&self) -> Vec<i8> {
        let ev = self.continue_sqrt();
        let m = self.segment_count();
        (0..m)
            .map(|j| {
                let mid = (self.vertices[j] + self.vertices[j + 1]) * T::lit(0.5);
                let s = self.sqrt_on_segment(&ev, j, T::lit(0.5));
                let p = ramification_quartic(self.q, mid).sqrt();
                if (s - p).norm() <= (s + p).norm() { 1 } else { -1 }
            })
            .collect()
    }

    fn continue_sqrt(&self) -> CycleEval<T> {
        self.run(None)
    }

    pub fn evaluate(&self, engine: &PeriodEngine<T>) -> CycleEval<T> {
        self.run(Some(engine))
    }

    fn run(&self, engine: Option<&PeriodEngine<T>>) -> CycleEval<T> {
        let m = self.segment_count();
        let k = self.seed;
        let zero = Complex::new(T::zero(), T::zero());
        let all = self.roots.to_vec();
        let mut vs = vec![zero; m + 1];
        vs[k] = self.seed_sqrt;
        let mut total = zero;
        let mut err = T::zero();
        let mut conv = true;
        let (z, o) = (T::zero(), T::one());
        for j in k..m - 1 {
            let w = walk(Piece::Line { a: self.vertices[j], b: self.vertices[j + 1] }, &all, z, vs[j], o, engine);
            vs[j + 1] = w.value;
            total = total + w.integral;
            err += w.error;
            conv &= w.converged;
        }
        let last = Piece::End { r: self.vertices[m], z1: self.vertices[m - 1] };
        let w = walk(last, &self.other_roots(&[self.end]), o, vs[m - 1], z, engine);
        let end_dir = w.value;
        total = total + w.integral;
        err += w.error;
        conv &= w.converged;
        for j in (1..k).rev() {
            let w = walk(Piece::Line { a: self.vertices[j], b: self.vertices[j + 1] }, &all, o, vs[j + 1], z, engine);
            vs[j] = w.value;
            total = total - w.integral;
            err += w.error;
            conv &= w.converged;
        }
        let first = Piece::End { r: self.vertices[0], z1: self.vertices[1] };
        let w = walk(first, &self.other_roots(&[self.start]), o, vs[1], z, engine);
        let start_dir = w.value;
        total = total - w.integral;
        err += w.error;
        conv &= w.converged;
        let two_i = Complex::new(T::zero(), T::lit(2.0));
        CycleEval {
            value: two_i * total,
            error: err * T::lit(2.0),
            converged: conv,
            vertex_sqrt: vs,
            start_dir,
            end_dir,
        }
    }

    /// Continued root at `vertices[j] + λ (vertices[j+1] − vertices[j])`, `0 < λ < 1`.
    pub(crate) fn sqrt_on_segment(&self, ev: &CycleEval<T>, j: usize, lambda: T) -> Complex<T> {
        let m = self.segment_count();
        let (z, o) = (T::zero(), T::one());
        if j == 0 {
            let piece = Piece::End { r: self.vertices[0], z1: self.vertices[1] };
            let u = lambda.sqrt();
            let w = walk(piece, &self.other_roots(&[self.start]), o, ev.vertex_sqrt[1], u, None);
            return w.value * u;
        }
        if j == m - 1 {
            let piece = Piece::End { r: self.vertices[m], z1: self.vertices[m - 1] };
            let u = (o - lambda).sqrt();
            let w = walk(piece, &self.other_roots(&[self.end]), o, ev.vertex_sqrt[m - 1], u, None);
            return w.value * u;
        }
        let piece = Piece::Line { a: self.vertices[j], b: self.vertices[j + 1] };
        walk(piece, &self.roots, z, ev.vertex_sqrt[j], lambda, None).value
    }

    /// Check that the vertex list is consistent with the tracked roots.
    pub fn validate(&self) -> Result<(), PeriodError> {
        let m = self.vertices.len();
        if m < 3 || self.seed == 0 || self.seed >= m - 1 {
            return Err(PeriodError::Invalid(format!("cycle {}: needs an interior seed vertex", self.name)));
        }
        if self.start == self.end {
            return Err(PeriodError::Invalid(format!("cycle {}: endpoints coincide", self.name)));
        }
        if self.clearance() <= T::zero() {
            return Err(PeriodError::Clearance(self.name.clone()));
        }
        Ok(())
    }
}

pub(crate) fn point_segment_distance<T: Real>(p: Complex<T>, a: Complex<T>, b: Complex<T>) -> T {
    let d = b - a;
    let l2 = d.norm_sqr();
    if l2 == T::zero() {
        return (p - a).norm();
    }
    let t = ((p - a) * d.conj()).re / l2;
    let t = t.max(T::zero()).min(T::one());
    (p - (a + d * t)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_signs() {
        let e = PeriodEngine::<f64>::default();
        let [a, b, c] = CyclePath::<f64>::reference();
        let da = a.evaluate(&e);
        let db = b.evaluate(&e);
        assert!(da.converged && db.converged);
        assert!(da.value.re < 0.0 && da.value.im.abs() < 1e-10, "{}", da.value);
        assert!(db.value.im > 0.0 && db.value.re.abs() < 1e-10, "{}", db.value);
        let dc = c.evaluate(&e);
        assert!(dc.converged);
    }

    #[test]
    fn a_matches_theta_integral() {
        // D_a(−2) = −2 ∫_{−π/2}^{π/2} dθ / √(4 cos θ (cos θ + 2)).
        let r = integrate(
            |u: f64| {
                // θ = π/2 (1 − u²) on each half, removing the endpoint singularity.
                let c = (std::f64::consts::FRAC_PI_2 * u * u).sin();
                let j = std::f64::consts::PI * u;
                Complex::new(j / (4.0 * c * (c + 2.0)).sqrt(), 0.0)
            },
            0.0,
            1.0,
            1e-14,
            1e-14,
            30,
        );
        let want = -2.0 * 2.0 * r.value.re;
        let e = PeriodEngine::<f64>::with_tol(1e-14);
        let got = CyclePath::<f64>::reference()[0].evaluate(&e).value;
        assert!((got.re - want).abs() < 1e-10, "{} vs {}", got, want);
    }

    #[test]
    fn reversal_negates() {
        let e = PeriodEngine::<f64>::default();
        let a = &CyclePath::<f64>::reference()[0];
        let v = a.evaluate(&e).value + a.reversed().evaluate(&e).value;
        assert!(v.norm() < 1e-11);
    }

    #[test]
    fn sheet_labels_flip_for_b() {
        let [a, b, _] = CyclePath::<f64>::reference();
        assert!(a.sheet_labels().iter().all(|&s| s == 1));
        let lb = b.sheet_labels();
        assert!(lb.contains(&1) || lb.contains(&-1));
    }
}
