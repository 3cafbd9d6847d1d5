//! Moving a cycle with `q` by an ambient isotopy of the t-plane.
//!
//! Each branch point `r_k` carries a bump `(1 − |z − r_k|²/ρ_k²)²` of radius `ρ_k`, half its
//! distance to the nearest other branch point. A step moves every vertex by the bump-weighted
//! root displacements; steps are limited to a tenth of `ρ_k`, so the map stays a diffeomorphism.

use super::cycle::{point_segment_distance, CyclePath};
use super::{distance_to_critical, ramification_quartic, raw_roots, PeriodEngine, PeriodError};
use crate::scalar::Real;
use num_complex::Complex;

fn match_pair<T: Real>(old: [Complex<T>; 2], new: [Complex<T>; 2]) -> [Complex<T>; 2] {
    let keep = (new[0] - old[0]).norm().max((new[1] - old[1]).norm());
    let swap = (new[1] - old[0]).norm().max((new[0] - old[1]).norm());
    if keep <= swap { new } else { [new[1], new[0]] }
}

/// Roots at `q` labelled to continue `old`.
pub(crate) fn tracked_roots<T: Real>(old: &[Complex<T>; 4], q: Complex<T>) -> [Complex<T>; 4] {
    let r = raw_roots(q);
    let a = match_pair([old[0], old[1]], [r[0], r[1]]);
    let b = match_pair([old[2], old[3]], [r[2], r[3]]);
    [a[0], a[1], b[0], b[1]]
}

fn bump_radii<T: Real>(roots: &[Complex<T>; 4]) -> [T; 4] {
    let mut rho = [T::infinity(); 4];
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                rho[i] = rho[i].min((roots[i] - roots[j]).norm() * T::lit(0.5));
            }
        }
    }
    rho
}

fn in_triangle<T: Real>(p: Complex<T>, a: Complex<T>, b: Complex<T>, c: Complex<T>) -> bool {
    let cross = |u: Complex<T>, v: Complex<T>| u.re * v.im - u.im * v.re;
    let d1 = cross(b - a, p - a);
    let d2 = cross(c - b, p - b);
    let d3 = cross(a - c, p - c);
    let neg = d1 < T::zero() || d2 < T::zero() || d3 < T::zero();
    let pos = d1 > T::zero() || d2 > T::zero() || d3 > T::zero();
    !(neg && pos)
}

impl<T: Real> CyclePath<T> {
    fn segment_ok(&self, j: usize, verts: &[Complex<T>], ratio: T) -> bool {
        let (a, b) = (verts[j], verts[j + 1]);
        let len = (b - a).norm();
        let m = verts.len() - 1;
        let mut skip = Vec::new();
        if j == 0 {
            skip.push(self.start);
        }
        if j + 1 == m {
            skip.push(self.end);
        }
        self.other_roots(&skip).into_iter().all(|r| len <= ratio * point_segment_distance(r, a, b))
    }

    /// Split segments until each is at most half its distance to the branch points it avoids.
    pub(crate) fn refine(&mut self) {
        let half = T::lit(0.5);
        for _ in 0..60 {
            let mut out = Vec::with_capacity(self.vertices.len() * 2);
            let mut seed = self.seed;
            let mut changed = false;
            for j in 0..self.segment_count() {
                out.push(self.vertices[j]);
                if j == self.seed {
                    seed = out.len() - 1;
                }
                if !self.segment_ok(j, &self.vertices, half) {
                    out.push((self.vertices[j] + self.vertices[j + 1]) * half);
                    changed = true;
                }
            }
            out.push(*self.vertices.last().unwrap());
            self.vertices = out;
            self.seed = seed;
            if !changed {
                return;
            }
        }
    }

    /// Drop interior vertices whose removal sweeps no branch point and keeps clearance.
    pub(crate) fn coarsen(&mut self) {
        let mut j = 1;
        while j + 1 < self.vertices.len() {
            if j == self.seed {
                j += 1;
                continue;
            }
            let (a, v, b) = (self.vertices[j - 1], self.vertices[j], self.vertices[j + 1]);
            let mut trial = self.vertices.clone();
            trial.remove(j);
            let mut tmp = self.clone();
            tmp.vertices = trial;
            let ok_len = tmp.segment_ok(j - 1, &tmp.vertices, T::lit(0.35));
            let sweeps = (0..4).any(|k| {
                let r = self.roots[k];
                r != a && r != b && in_triangle(r, a, v, b)
            });
            if ok_len && !sweeps {
                self.vertices.remove(j);
                if self.seed > j {
                    self.seed -= 1;
                }
                j += 1;
            } else {
                j += 1;
            }
        }
    }

    /// One isotopy step to `q1`; `None` when the step is too large.
    fn try_step(&self, q1: Complex<T>) -> Option<CyclePath<T>> {
        let new_roots = tracked_roots(&self.roots, q1);
        let rho = bump_radii(&self.roots);
        let mut delta = [Complex::new(T::zero(), T::zero()); 4];
        for k in 0..4 {
            delta[k] = new_roots[k] - self.roots[k];
            if !(delta[k].norm() <= rho[k] * T::lit(0.1)) {
                return None;
            }
        }
        let m = self.segment_count();
        let mut verts = Vec::with_capacity(self.vertices.len());
        for (i, &z) in self.vertices.iter().enumerate() {
            if i == 0 {
                verts.push(new_roots[self.start]);
                continue;
            }
            if i == m {
                verts.push(new_roots[self.end]);
                continue;
            }
            let mut w = z;
            for k in 0..4 {
                let x2 = (z - self.roots[k]).norm_sqr() / (rho[k] * rho[k]);
                if x2 < T::one() {
                    let b = (T::one() - x2) * (T::one() - x2);
                    w = w + delta[k] * b;
                }
            }
            verts.push(w);
        }
        let old = self.seed_sqrt;
        let p = ramification_quartic(q1, verts[self.seed]).sqrt();
        let s = if (p - old).norm() <= (p + old).norm() { p } else { -p };
        if !((s - old).norm() <= old.norm() * T::lit(0.5)) {
            return None;
        }
        let mut c = CyclePath { name: self.name.clone(), q: q1, roots: new_roots, start: self.start, end: self.end, vertices: verts, seed: self.seed, seed_sqrt: s };
        c.refine();
        c.coarsen();
        Some(c)
    }
}

impl<T: Real> PeriodEngine<T> {
    /// Transport along the straight segment from `cycle.q` to `q1`.
    pub fn transport(&self, cycle: &CyclePath<T>, q1: Complex<T>) -> Result<CyclePath<T>, PeriodError> {
        let q0 = cycle.q;
        let total = (q1 - q0).norm();
        if total == T::zero() {
            return Ok(cycle.clone());
        }
        if distance_to_critical(q1) == T::zero() {
            return Err(PeriodError::Critical(format!("{}", q1)));
        }
        let mut cur = cycle.clone();
        let mut tau = T::zero();
        let mut h = T::lit(0.05).min(total);
        let floor = T::epsilon() * T::lit(64.0);
        let mut steps = 0usize;
        while tau < T::one() {
            steps += 1;
            if steps > self.max_steps {
                return Err(PeriodError::StepUnderflow(format!("{}", cur.q)));
            }
            let next = (tau + h / total).min(T::one());
            let qn = if next == T::one() { q1 } else { q0 + (q1 - q0) * next };
            match cur.try_step(qn) {
                Some(c) => {
                    cur = c;
                    tau = next;
                    h = h * T::lit(1.5);
                }
                None => {
                    h = h * T::lit(0.5);
                    if h < floor * total.max(T::one()) {
                        return Err(PeriodError::StepUnderflow(format!("{}", cur.q)));
                    }
                }
            }
        }
        Ok(cur)
    }

    /// Transport through each vertex of a q-polyline in turn.
    pub fn transport_along(&self, cycle: &CyclePath<T>, path: &[Complex<T>]) -> Result<CyclePath<T>, PeriodError> {
        let mut cur = cycle.clone();
        for &q in path {
            cur = self.transport(&cur, q)?;
        }
        Ok(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn round_trip_without_enclosing() {
        let e = PeriodEngine::<f64>::default();
        let a = CyclePath::<f64>::reference()[0].clone();
        let d0 = a.evaluate(&e).value;
        let moved = e.transport_along(&a, &[Complex64::new(-2.0, 1.0), Complex64::new(-1.0, 1.0), Complex64::new(-2.0, 0.0)]).unwrap();
        let d1 = moved.evaluate(&e).value;
        assert!((d0 - d1).norm() < 1e-10, "{} {}", d0, d1);
    }

    #[test]
    fn derivative_is_analytic_in_q() {
        // Cauchy-Riemann: dD/dq along real and imaginary directions agree.
        let e = PeriodEngine::<f64>::default();
        let a = CyclePath::<f64>::reference()[1].clone();
        let q0 = Complex64::new(-2.0, 0.3);
        let base = e.transport(&a, q0).unwrap();
        let h = 1e-4;
        let f = |dq: Complex64| e.transport(&base, q0 + dq).unwrap().evaluate(&e).value;
        let dx = (f(Complex64::new(h, 0.0)) - f(Complex64::new(-h, 0.0))) / (2.0 * h);
        let dy = (f(Complex64::new(0.0, h)) - f(Complex64::new(0.0, -h))) / Complex64::new(0.0, 2.0 * h);
        assert!((dx - dy).norm() < 1e-6, "{} {}", dx, dy);
    }

    #[test]
    fn clearance_kept_near_critical() {
        let e = PeriodEngine::<f64>::default();
        let b = CyclePath::<f64>::reference()[1].clone();
        let near = e.transport(&b, Complex64::new(-4.0 + 1e-4, 0.0)).unwrap();
        assert!(near.clearance() > 0.0);
        assert!(near.validate().is_ok());
    }
}
