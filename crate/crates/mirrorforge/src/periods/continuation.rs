//! Integration of period derivatives along paths in the q-plane.

use super::cycle::CyclePath;
use super::quad::gk15_nodes;
use super::{cx, distance_to_critical, PeriodEngine, PeriodError};
use crate::scalar::Real;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Half plane used to reach `q` from the reference fibre at `q = −2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Upper,
    Lower,
    /// Along the real segment `(−4, 0)`.
    Real,
}

/// Waypoints from `−2` to `q` staying in the chosen closed half plane.
pub fn route<T: Real>(q: Complex<T>, region: Region) -> Result<Vec<Complex<T>>, PeriodError> {
    let d = distance_to_critical(q);
    if d == T::zero() {
        return Err(PeriodError::Critical(format!("{}", q)));
    }
    let sign = match region {
        Region::Real => {
            let ok = q.im == T::zero() && q.re > T::lit(-4.0) && q.re < T::zero();
            if !ok {
                return Err(PeriodError::Invalid(format!("{} is not on (-4, 0)", q)));
            }
            return Ok(vec![q]);
        }
        Region::Upper => T::one(),
        Region::Lower => -T::one(),
    };
    let lift = cx::<T>(-2.0, 0.0) + Complex::new(T::zero(), T::lit(0.5) * sign);
    let side = q.im * sign;
    if side > T::zero() {
        Ok(vec![lift, q])
    } else if side == T::zero() {
        let h = T::lit(0.5).min(d);
        Ok(vec![lift, Complex::new(q.re, h * sign), q])
    } else {
        Err(PeriodError::Invalid(format!("{} is not in the requested half plane", q)))
    }
}

/// A period value attached to a cycle and the q-path it was integrated along.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodRecord<T> {
    pub cycle: String,
    pub q_path: Vec<Complex<T>>,
    /// Critical value the integration starts from, if any.
    pub base: Option<Complex<T>>,
    pub value: Complex<T>,
    pub error_estimate: T,
    pub converged: bool,
}

/// Integrals `∫ D_γ dq` for several cycles along one path.
#[derive(Clone, Debug)]
pub struct ContinuationResult<T> {
    /// Cycles at the end of the path.
    pub cycles: Vec<CyclePath<T>>,
    pub values: Vec<Complex<T>>,
    pub errors: Vec<T>,
    /// Running integrals at every vertex of the path, one row per vertex.
    pub checkpoints: Vec<Vec<Complex<T>>>,
    pub converged: bool,
}

struct Single<T> {
    cycle: CyclePath<T>,
    value: Complex<T>,
    error: T,
    checkpoints: Vec<Complex<T>>,
    converged: bool,
}

fn solve_real<T: Real>(mut m: Vec<Vec<T>>, mut rhs: Vec<Complex<T>>) -> Option<Vec<Complex<T>>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[piv][col].abs() <= T::epsilon() {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let v = m[col][c];
                m[r][c] -= f * v;
            }
            let v = rhs[col];
            rhs[r] = rhs[r] - v * f;
        }
    }
    let mut x = vec![Complex::new(T::zero(), T::zero()); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r];
        for c in r + 1..n {
            acc = acc - x[c] * m[r][c];
        }
        x[r] = acc / m[r][r];
    }
    Some(x)
}

/// `∫_0^1 D dσ` for `D ≈ A log σ + B + C σ log σ + Dσ + E σ² log σ + F σ²` fitted at `σ = 2^{-k}`.
fn log_fit<T: Real>(samples: &[(T, Complex<T>)]) -> Option<Complex<T>> {
    let rows: Vec<Vec<T>> = samples
        .iter()
        .map(|&(s, _)| {
            let l = s.ln();
            vec![l, T::one(), s * l, s, s * s * l, s * s]
        })
        .collect();
    let c = solve_real(rows, samples.iter().map(|p| p.1).collect())?;
    let w = [-1.0, 1.0, -0.25, 0.5, -1.0 / 9.0, 1.0 / 3.0];
    Some(c.iter().zip(w).fold(Complex::new(T::zero(), T::zero()), |acc, (ci, wi)| acc + *ci * T::lit(wi)))
}

impl<T: Real> PeriodEngine<T> {
    /// `∫_c^{q0} D_γ dq` along the straight ray from the critical value `c` to the cycles' `q0`.
    pub fn singular_integrals(&self, c: Complex<T>, cycles: &[CyclePath<T>]) -> Result<(Vec<Complex<T>>, Vec<T>), PeriodError> {
        let q0 = cycles[0].q;
        let eps = (q0 - c).norm();
        let dir = (q0 - c) / eps;
        let mut values = Vec::new();
        let mut errors = Vec::new();
        for cyc in cycles {
            let mut cur = cyc.clone();
            let mut samples = Vec::new();
            for k in 0..7 {
                let sigma = T::lit(0.5f64.powi(k));
                cur = self.transport(&cur, c + dir * (eps * sigma))?;
                samples.push((sigma, cur.evaluate(self).value));
            }
            let outer = log_fit(&samples[..6]).ok_or(PeriodError::Singular("local fit"))?;
            let inner = log_fit(&samples[1..]).ok_or(PeriodError::Singular("local fit"))?;
            values.push(dir * outer * eps);
            errors.push((outer - inner).norm() * eps);
        }
        Ok((values, errors))
    }

    /// Integrate `D_γ` for every cycle along the polyline `path`, starting at the cycles' `q`
    /// (which must be `path[0]`). With `base = Some(c)` the integral starts at the critical value
    /// `c` instead and includes the local piece from `c` to `path[0]`. Cycles are integrated
    /// independently and in parallel.
    pub fn continue_periods(&self, path: &[Complex<T>], cycles: &[CyclePath<T>], base: Option<Complex<T>>) -> Result<ContinuationResult<T>, PeriodError> {
        use rayon::prelude::*;
        if path.is_empty() || cycles.iter().any(|c| c.q != path[0]) {
            return Err(PeriodError::Invalid("cycles must sit over the first path vertex".into()));
        }
        let per: Vec<Single<T>> = cycles.par_iter().map(|c| self.integrate_one(path, c, base)).collect::<Result<_, _>>()?;
        let n_vertices = path.len();
        let checkpoints = (0..n_vertices).map(|v| per.iter().map(|p| p.checkpoints[v]).collect()).collect();
        Ok(ContinuationResult {
            converged: per.iter().all(|p| p.converged),
            values: per.iter().map(|p| p.value).collect(),
            errors: per.iter().map(|p| p.error).collect(),
            cycles: per.into_iter().map(|p| p.cycle).collect(),
            checkpoints,
        })
    }

    fn integrate_one(&self, path: &[Complex<T>], cycle: &CyclePath<T>, base: Option<Complex<T>>) -> Result<Single<T>, PeriodError> {
        let zero = Complex::new(T::zero(), T::zero());
        let mut value = zero;
        let mut error = T::zero();
        let mut converged = true;
        if let Some(c) = base {
            let (v, e) = self.singular_integrals(c, std::slice::from_ref(cycle))?;
            value = v[0];
            error = e[0];
        }
        let mut cur = cycle.clone();
        let mut checkpoints = vec![value];
        let (nodes, wk, wg) = gk15_nodes::<T>();
        for leg in path.windows(2) {
            let (qa, qb) = (leg[0], leg[1]);
            let len = (qb - qa).norm();
            if len == T::zero() {
                checkpoints.push(value);
                continue;
            }
            let dir = (qb - qa) / len;
            let mut s = T::zero();
            while s < len {
                let here = qa + dir * s;
                let mut h = (self.panel_ratio * distance_to_critical(here)).min(T::lit(0.5)).min(len - s);
                if len - s - h < h * T::lit(0.1) {
                    h = len - s;
                }
                let half = h * T::lit(0.5);
                let mid = s + half;
                let mut kr = zero;
                let mut ga = zero;
                for (j, x) in nodes.iter().enumerate() {
                    cur = self.transport(&cur, qa + dir * (mid + half * *x))?;
                    let ev = cur.evaluate(self);
                    converged &= ev.converged;
                    kr = kr + ev.value * wk[j];
                    ga = ga + ev.value * wg[j];
                }
                value = value + kr * dir * half;
                error += ((kr - ga) * half).norm();
                s = s + h;
            }
            cur = self.transport(&cur, qb)?;
            checkpoints.push(value);
        }
        let tol = self.abs_tol.max(self.rel_tol * value.norm());
        converged &= error <= tol * T::lit(100.0);
        Ok(Single { cycle: cur, value, error, checkpoints, converged })
    }

    /// Single-cycle form of [`Self::continue_periods`].
    pub fn continue_period(&self, path: &[Complex<T>], cycle: &CyclePath<T>, base: Option<Complex<T>>) -> Result<(PeriodRecord<T>, CyclePath<T>), PeriodError> {
        let r = self.continue_periods(path, std::slice::from_ref(cycle), base)?;
        let rec = PeriodRecord {
            cycle: cycle.name.clone(),
            q_path: path.to_vec(),
            base,
            value: r.values[0],
            error_estimate: r.errors[0],
            converged: r.converged,
        };
        Ok((rec, r.cycles.into_iter().next().unwrap()))
    }

    /// Thimble period `−∫_c^q D_γ dq'` of a cycle vanishing at the critical value `c`, along
    /// the straight segment from `c` to `cycle.q`.
    pub fn thimble_period(&self, c: Complex<T>, cycle: &CyclePath<T>) -> Result<PeriodRecord<T>, PeriodError> {
        let q = cycle.q;
        let start = c + (q - c) * (self.singular_radius / (q - c).norm()).min(T::lit(0.5));
        let back = self.transport(cycle, start)?;
        let (mut rec, _) = self.continue_period(&[start, q], &back, Some(c))?;
        rec.value = -rec.value;
        Ok(rec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn log_fit_exact_on_model() {
        let f = |s: f64| Complex64::new(0.3 * s.ln() + 1.0 - 2.0 * s * s.ln() + 0.5 * s, 0.1 * s * s);
        let samples: Vec<(f64, Complex64)> = (0..6).map(|k| (0.5f64.powi(k), f(0.5f64.powi(k)))).collect();
        let got = log_fit(&samples).unwrap();
        let want = Complex64::new(-0.3 + 1.0 + 0.5 + 0.25, 0.1 / 3.0);
        assert!((got - want).norm() < 1e-12, "{}", got);
    }

    #[test]
    fn routes() {
        let r = route(Complex64::new(-5.0, 0.0), Region::Upper).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r[1].im > 0.0);
        assert!(route(Complex64::new(-5.0, 0.0), Region::Real).is_err());
        assert!(route(Complex64::new(1.0, -1.0), Region::Upper).is_err());
        assert!(route(Complex64::new(-4.0, 0.0), Region::Upper).is_err());
    }

    #[test]
    fn path_independence() {
        let e = PeriodEngine::<f64>::default();
        let a = CyclePath::<f64>::reference()[0].clone();
        let p1 = [Complex64::new(-2.0, 0.0), Complex64::new(-1.0, 1.0)];
        let p2 = [Complex64::new(-2.0, 0.0), Complex64::new(-2.0, 1.0), Complex64::new(-1.0, 1.0)];
        let (r1, _) = e.continue_period(&p1, &a, None).unwrap();
        let (r2, _) = e.continue_period(&p2, &a, None).unwrap();
        assert!((r1.value - r2.value).norm() < 1e-9, "{} {}", r1.value, r2.value);
    }
}
