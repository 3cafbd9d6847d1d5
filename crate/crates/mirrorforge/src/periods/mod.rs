//! Period integrals of the fibration `W = t1 + t2 + 1/t1 + 1/t2` over the q-plane.
//!
//! A fibre `W = q` is the double cover of the `t = t2` line branched at the roots of
//! `P(t) = (t² + 1 − q t)² − 4t² = (t² − (q+2)t + 1)(t² − (q−2)t + 1)`. A cycle is the
//! two-sheeted lift of a path between two branch points, so
//! `∫ ι_{∂q} Ω̌ = 2i ∫_γ dt / s(t)` with `s` the continuation of `√P` along the path.

mod continuation;
mod cycle;
mod local;
mod syz;
mod sweep;
pub mod quad;
mod topology;
mod transport;

pub use continuation::{route, ContinuationResult, PeriodRecord, Region};
pub use cycle::{CycleEval, CyclePath};
pub use local::{appendix_b, degeneration_area, degeneration_area_with, vanishing_cycle_period, AppendixB};
pub use sweep::{default_region, CycleCombination, SweepRecord};
pub use syz::{AffineSample, Anchor, Locus, LocusReport};
pub use topology::{circle_loop, BasisState, MonodromyResult};

use crate::laurent::LaurentPolynomial;
use crate::scalar::Real;
use num_complex::Complex;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PeriodError {
    #[error("q = {0} is a critical value")]
    Critical(String),
    #[error("transport step underflow near q = {0}")]
    StepUnderflow(String),
    #[error("cycle path lost clearance: {0}")]
    Clearance(String),
    #[error("no integer monodromy match: residual {0:e}")]
    NoIntegerMatch(f64),
    #[error("intersection not transverse after {0} perturbations")]
    NotTransverse(usize),
    #[error("singular linear system in {0}")]
    Singular(&'static str),
    #[error("cycles live over different q")]
    DifferentFibres,
    #[error("{0}")]
    Invalid(String),
}

/// The fibration `t1 + t2 + 1/t1 + 1/t2 = q` with the holomorphic form `i dt1/t1 ∧ dt2/t2`.
#[derive(Clone, Debug, Serialize)]
pub struct FibrationSpec {
    pub superpotential: String,
    pub form: &'static str,
}

impl FibrationSpec {
    /// Checks `(t²+1−qt)² − 4t² = (t²−(q+2)t+1)(t²−(q−2)t+1)` as polynomials in `(t, q)`.
    pub fn p1xp1() -> Result<Self, PeriodError> {
        type L = LaurentPolynomial<i64>;
        let t = L::monomial([1, 0], 1);
        let q = L::monomial([0, 1], 1);
        let one = L::one();
        let two = L::constant(2);
        let inner = &(&(&t * &t) + &one) - &(&q * &t);
        let quartic = &(&inner * &inner) - &(&(&t * &t).scale(&4));
        let f1 = &(&(&t * &t) - &(&(&q + &two) * &t)) + &one;
        let f2 = &(&(&t * &t) - &(&(&q - &two) * &t)) + &one;
        if quartic != &f1 * &f2 {
            return Err(PeriodError::Invalid("ramification quartic does not factor".into()));
        }
        Ok(FibrationSpec {
            superpotential: "t1 + t2 + t1^-1 + t2^-1".into(),
            form: "i*dt1/t1^dt2/t2",
        })
    }
}

/// A branch point together with the quadratic factor (1 or 2) it solves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Root<T> {
    pub value: Complex<T>,
    pub factor: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RamificationSet<T> {
    pub q: Complex<T>,
    pub roots: [Root<T>; 4],
}

impl<T: Real> RamificationSet<T> {
    /// Pairs of roots closer than `tol`.
    pub fn collisions(&self, tol: T) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                if (self.roots[i].value - self.roots[j].value).norm() <= tol {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn values(&self) -> [Complex<T>; 4] {
        [self.roots[0].value, self.roots[1].value, self.roots[2].value, self.roots[3].value]
    }
}

pub(crate) fn cx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Roots of `t² − βt + 1`, the larger one first; their product is exactly 1 up to rounding.
pub(crate) fn unit_quadratic<T: Real>(beta: Complex<T>) -> [Complex<T>; 2] {
    let four = T::lit(4.0);
    let d = (beta * beta - Complex::new(four, T::zero())).sqrt();
    let p = beta + d;
    let m = beta - d;
    let big = if p.norm() >= m.norm() { p } else { m } * T::lit(0.5);
    if big.norm() == T::zero() {
        return [big, big];
    }
    [big, big.inv()]
}

/// The two factor pairs `[f1, f1', f2, f2']` in no particular order within a pair.
pub(crate) fn raw_roots<T: Real>(q: Complex<T>) -> [Complex<T>; 4] {
    let two = Complex::new(T::lit(2.0), T::zero());
    let a = unit_quadratic(q + two);
    let b = unit_quadratic(q - two);
    [a[0], a[1], b[0], b[1]]
}

/// `P(t) = (t² + 1 − qt)² − 4t²`, evaluated directly.
pub fn ramification_quartic<T: Real>(q: Complex<T>, t: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let inner = t * t + one - q * t;
    inner * inner - t * t * T::lit(4.0)
}

/// The four branch points at `q`, sorted by factor, then argument, then modulus.
pub fn ramification_points<T: Real>(q: Complex<T>) -> RamificationSet<T> {
    let r = raw_roots(q);
    let mut roots = [
        Root { value: r[0], factor: 1 },
        Root { value: r[1], factor: 1 },
        Root { value: r[2], factor: 2 },
        Root { value: r[3], factor: 2 },
    ];
    let key = |x: &Root<T>| (x.factor, x.value.arg().to_f64_lossy(), x.value.norm().to_f64_lossy());
    roots.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap_or(std::cmp::Ordering::Equal));
    RamificationSet { q, roots }
}

/// Zeros of the discriminants `q² + 4q` and `q² − 4q`.
///
/// Factor `k` is `t² − (q + s_k)t + 1` with `s_k = ±2`; its discriminant `(q + s_k)² − 4`
/// vanishes exactly when `q + s_k = ±2`.
pub fn critical_values() -> Vec<i64> {
    let mut out: Vec<i64> = [2i64, -2].iter().flat_map(|s| [2 - s, -2 - s]).collect();
    out.sort();
    out.dedup();
    out
}

pub(crate) fn critical_points<T: Real>() -> Vec<Complex<T>> {
    critical_values().into_iter().map(|c| Complex::new(T::lit(c as f64), T::zero())).collect()
}

pub(crate) fn distance_to_critical<T: Real>(q: Complex<T>) -> T {
    critical_points::<T>().into_iter().map(|c| (q - c).norm()).fold(T::infinity(), T::min)
}

/// Numerical settings for the period engine.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodEngine<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_depth: u32,
    pub max_steps: usize,
    /// Radius of the local fit at a critical base point.
    pub singular_radius: T,
    /// Panel length relative to the distance from the nearest critical value.
    pub panel_ratio: T,
}

impl<T: Real> Default for PeriodEngine<T> {
    fn default() -> Self {
        let eps = T::epsilon().to_f64_lossy();
        let tol = if eps < 1e-10 { 1e-12 } else { 1e-5 };
        PeriodEngine {
            abs_tol: T::lit(tol),
            rel_tol: T::lit(tol),
            max_depth: 30,
            max_steps: 200_000,
            singular_radius: T::lit(2e-3),
            panel_ratio: T::lit(0.25),
        }
    }
}

impl<T: Real> PeriodEngine<T> {
    pub fn with_tol(tol: T) -> Self {
        PeriodEngine { abs_tol: tol, rel_tol: tol, ..Self::default() }
    }

    /// `∫_{∂γ} ι_{∂/∂q} Ω̌` for the cycle at its own `q`.
    pub fn period_derivative(&self, cycle: &CyclePath<T>) -> CycleEval<T> {
        cycle.evaluate(self)
    }

    /// The reference cycles `a`, `b` (joining the factor-1 pair through `+1` and `−1`) and `c`
    /// (joining a factor-1 root to a factor-2 root) at `q = −2`.
    pub fn reference_cycles(&self) -> [CyclePath<T>; 3] {
        CyclePath::reference()
    }

    /// `a(q)`, `b(q)` transported from `q = −2` along [`route`].
    pub fn standard_cycles(&self, q: Complex<T>, region: Region) -> Result<(CyclePath<T>, CyclePath<T>), PeriodError> {
        let [a, b, _] = CyclePath::reference();
        let path = route(q, region)?;
        let a = self.transport_along(&a, &path)?;
        let b = self.transport_along(&b, &path)?;
        Ok((a, b))
    }

    pub fn fibration(&self) -> FibrationSpec {
        FibrationSpec::p1xp1().expect("identity holds")
    }
}
