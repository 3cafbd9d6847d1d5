//! Monodromy matrices and intersection numbers of lifted cycles.

use super::cycle::CyclePath;
use super::{PeriodEngine, PeriodError};
use crate::scalar::Real;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Base point with the integer matrix expressing the current basis in the reference basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisState<T> {
    pub base: Complex<T>,
    pub matrix: [[i64; 2]; 2],
}

impl<T: Real> BasisState<T> {
    pub fn identity(base: Complex<T>) -> Self {
        BasisState { base, matrix: [[1, 0], [0, 1]] }
    }

    pub fn determinant(&self) -> i64 {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }

    /// Compose with a monodromy matrix acting on column vectors.
    pub fn apply(&mut self, m: [[i64; 2]; 2]) {
        self.matrix = matmul(m, self.matrix);
    }
}

pub fn matmul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonodromyResult {
    /// Column `k` holds the coordinates of the image of basis cycle `k`.
    pub matrix: [[i64; 2]; 2],
    pub raw: [[f64; 2]; 2],
    pub residual: f64,
}

/// Counterclockwise circle about `center` through `base`, starting and ending exactly at `base`.
pub fn circle_loop<T: Real>(center: Complex<T>, base: Complex<T>, n: usize) -> Vec<Complex<T>> {
    let r = (base - center).norm();
    let phi = (base - center).arg();
    let mut out: Vec<Complex<T>> = (0..=n)
        .map(|k| {
            let th = phi + T::TAU() * T::lit(k as f64 / n as f64);
            center + Complex::new(th.cos(), th.sin()) * r
        })
        .collect();
    out[0] = base;
    out[n] = base;
    out
}

/// Real coordinates of `target` in the ℝ-basis `(u, v)` of ℂ.
pub(crate) fn real_coords<T: Real>(u: Complex<T>, v: Complex<T>, target: Complex<T>) -> Option<[T; 2]> {
    let det = u.re * v.im - u.im * v.re;
    if det.abs() <= T::epsilon() * u.norm() * v.norm() {
        return None;
    }
    let m = (target.re * v.im - target.im * v.re) / det;
    let n = (u.re * target.im - u.im * target.re) / det;
    Some([m, n])
}

impl<T: Real> PeriodEngine<T> {
    /// Transport the basis around the closed polyline `lp` (first vertex = last vertex = the
    /// basis' `q`) and identify the images by their period derivatives.
    pub fn monodromy(&self, lp: &[Complex<T>], basis: &[CyclePath<T>; 2]) -> Result<MonodromyResult, PeriodError> {
        let q0 = basis[0].q;
        if basis[1].q != q0 || lp.first() != Some(&q0) || lp.last() != Some(&q0) {
            return Err(PeriodError::Invalid("loop must start and end at the basis fibre".into()));
        }
        let d: Vec<Complex<T>> = basis.iter().map(|c| c.evaluate(self).value).collect();
        let mut raw = [[0.0; 2]; 2];
        let mut matrix = [[0i64; 2]; 2];
        let mut residual = 0.0f64;
        for k in 0..2 {
            let moved = self.transport_along(&basis[k], &lp[1..])?;
            let dk = moved.evaluate(self).value;
            let mn = real_coords(d[0], d[1], dk).ok_or(PeriodError::Singular("period basis"))?;
            for i in 0..2 {
                let x = mn[i].to_f64_lossy();
                raw[i][k] = x;
                matrix[i][k] = x.round() as i64;
                residual = residual.max((x - x.round()).abs());
            }
        }
        if !(residual < 1e-6) {
            return Err(PeriodError::NoIntegerMatch(residual));
        }
        Ok(MonodromyResult { matrix, raw, residual })
    }

    /// Integer coordinates of `c` in the basis `(u, v)`, all over the same `q`.
    pub fn express(&self, c: &CyclePath<T>, u: &CyclePath<T>, v: &CyclePath<T>) -> Result<[i64; 2], PeriodError> {
        let mn = real_coords(u.evaluate(self).value, v.evaluate(self).value, c.evaluate(self).value).ok_or(PeriodError::Singular("period basis"))?;
        let mut out = [0i64; 2];
        for i in 0..2 {
            let x = mn[i].to_f64_lossy();
            if (x - x.round()).abs() >= 1e-6 {
                return Err(PeriodError::NoIntegerMatch((x - x.round()).abs()));
            }
            out[i] = x.round() as i64;
        }
        Ok(out)
    }

    /// Algebraic intersection number of the lifted cycles.
    ///
    /// A transverse crossing of the projections at `z` meets once on each sheet, contributing
    /// `2ε·sign Im(conj(dz₁)·dz₂)` with `ε = ±1` as the continued roots agree or differ. A shared
    /// branch point is a single smooth crossing in the uniformizer `w ∝ s`, whose tangents are
    /// `±s` just off the branch point.
    pub fn intersection_number(&self, c1: &CyclePath<T>, c2: &CyclePath<T>) -> Result<i64, PeriodError> {
        if c1.q != c2.q {
            return Err(PeriodError::DifferentFibres);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut other = c2.clone();
        let attempts = 12;
        for attempt in 0..=attempts {
            if let Some(n) = self.try_intersection(c1, &other) {
                return Ok(n);
            }
            if attempt == attempts {
                break;
            }
            let scale = other.clearance() * T::lit(1e-3 * (attempt + 1) as f64);
            let m = other.vertices.len() - 1;
            for j in 1..m {
                let dx = T::lit(rng.gen_range(-1.0..1.0)) * scale;
                let dy = T::lit(rng.gen_range(-1.0..1.0)) * scale;
                other.vertices[j] = other.vertices[j] + Complex::new(dx, dy);
            }
            if other.clearance() <= T::zero() {
                other = c2.clone();
            }
        }
        Err(PeriodError::NotTransverse(attempts))
    }

    fn try_intersection(&self, c1: &CyclePath<T>, c2: &CyclePath<T>) -> Option<i64> {
        let e1 = c1.evaluate(self);
        let e2 = c2.evaluate(self);
        let tiny = T::lit(1e-9);
        let cross = |u: Complex<T>, v: Complex<T>| u.re * v.im - u.im * v.re;
        let mut total = 0i64;
        let shared = |i: usize, j: usize| c1.roots[i] == c2.roots[j];
        let ends1 = [(c1.start, e1.start_dir), (c1.end, -e1.end_dir)];
        let ends2 = [(c2.start, e2.start_dir), (c2.end, -e2.end_dir)];
        for &(i, t1) in &ends1 {
            for &(j, t2) in &ends2 {
                if shared(i, j) {
                    let c = cross(t1, t2) / (t1.norm() * t2.norm());
                    if c.abs() < T::lit(1e-7) {
                        return None;
                    }
                    total += if c > T::zero() { 1 } else { -1 };
                }
            }
        }
        let m1 = c1.segment_count();
        let m2 = c2.segment_count();
        for i in 0..m1 {
            let (a0, a1) = (c1.vertices[i], c1.vertices[i + 1]);
            let da = a1 - a0;
            for j in 0..m2 {
                let (b0, b1) = (c2.vertices[j], c2.vertices[j + 1]);
                let db = b1 - b0;
                let den = cross(da, db);
                let w = b0 - a0;
                if den.abs() <= T::epsilon() * da.norm() * db.norm() * T::lit(16.0) {
                    // Parallel: only a problem if collinear and overlapping.
                    if cross(w, da).abs() <= tiny * da.norm() * (da.norm() + w.norm()) {
                        let la = da.norm_sqr();
                        let p0 = (w * da.conj()).re / la;
                        let p1 = ((b1 - a0) * da.conj()).re / la;
                        let (lo, hi) = if p0 < p1 { (p0, p1) } else { (p1, p0) };
                        if hi > T::zero() && lo < T::one() {
                            let touches_only_at_root = (hi - T::zero()).abs() <= tiny || (lo - T::one()).abs() <= tiny;
                            if !touches_only_at_root {
                                return None;
                            }
                        }
                    }
                    continue;
                }
                let s = cross(w, db) / den;
                let t = cross(w, da) / den;
                let inside = |x: T| x > tiny && x < T::one() - tiny;
                let near = |x: T| x >= -tiny && x <= T::one() + tiny;
                if inside(s) && inside(t) {
                    let sa = c1.sqrt_on_segment(&e1, i, s);
                    let sb = c2.sqrt_on_segment(&e2, j, t);
                    let eps = if (sa - sb).norm() < (sa + sb).norm() { 1 } else { -1 };
                    let sign = if den > T::zero() { 1 } else { -1 };
                    total += 2 * eps * sign;
                } else if near(s) && near(t) {
                    let at_shared_root = {
                        let p = a0 + da * s;
                        (0..4).any(|k| (p - c1.roots[k]).norm() <= tiny * (T::one() + p.norm()) && c1.roots[k] == c2.roots[k])
                    };
                    if !at_shared_root {
                        return None;
                    }
                }
            }
        }
        Some(total)
    }
}
