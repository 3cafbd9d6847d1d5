//! Affine coordinates `x_γ(q) = −Im ∫_O^q D_γ dq'` on the base, with `x = x_{a−b}`, `y = x_{a+b}`.

use super::continuation::Region;
use super::{cx, PeriodEngine, PeriodError};
use crate::scalar::Real;
use num_complex::Complex;
use serde::Serialize;

/// The three loci where one affine coordinate is constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Locus {
    /// `(−4, 0)`: `x + y = 0`.
    NegativeSegment,
    /// `i·(0, 10]`: `x_{−a+b} = 0`.
    ImaginaryAxis,
    /// `(−∞, −4)`: `x_{−a+b}` equals its value at `−4`.
    LeftRay,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineSample<T> {
    pub q: Complex<T>,
    pub x_a: T,
    pub x_b: T,
    pub x: T,
    pub y: T,
    /// The quantity that should vanish on this locus, and its allowed size.
    pub residual: T,
    pub bound: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusReport<T> {
    pub locus: Locus,
    pub samples: Vec<AffineSample<T>>,
    /// Largest `residual / bound`.
    pub worst: T,
    pub converged: bool,
    pub pass: bool,
}

/// Affine coordinates of `A₋ = −4`, reached along the real segment from `O`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Anchor<T> {
    pub x_a: T,
    pub x_b: T,
    pub x: T,
    pub y: T,
    pub error: T,
}

impl<T: Real> PeriodEngine<T> {
    fn coords(&self, q: Complex<T>, ia: Complex<T>, ib: Complex<T>) -> AffineSample<T> {
        let x_a = -ia.im;
        let x_b = -ib.im;
        AffineSample { q, x_a, x_b, x: x_a - x_b, y: x_a + x_b, residual: T::zero(), bound: T::zero() }
    }

    /// Sample `n` points of a locus and check its defining identity.
    pub fn affine_locus(&self, locus: Locus, n: usize) -> Result<LocusReport<T>, PeriodError> {
        let eps = self.singular_radius;
        let (critical, start, region, qs): (Complex<T>, Complex<T>, Region, Vec<Complex<T>>) = match locus {
            Locus::NegativeSegment => (
                cx(0.0, 0.0),
                Complex::new(-eps, T::zero()),
                Region::Real,
                (1..=n).map(|k| cx(-4.0 * k as f64 / (n + 1) as f64, 0.0)).collect(),
            ),
            Locus::ImaginaryAxis => (
                cx(0.0, 0.0),
                Complex::new(T::zero(), eps),
                Region::Upper,
                (1..=n).map(|k| cx(0.0, 10.0 * k as f64 / n as f64)).collect(),
            ),
            Locus::LeftRay => (
                cx(-4.0, 0.0),
                Complex::new(T::lit(-4.0) - eps, T::zero()),
                Region::Upper,
                (1..=n).map(|k| cx(-4.0 - 0.2 * k as f64, 0.0)).collect(),
            ),
        };
        let (a, b) = self.standard_cycles(start, region)?;
        let mut path = vec![start];
        path.extend(qs.iter().copied());
        let r = self.continue_periods(&path, &[a, b], Some(critical))?;
        let tol7 = T::lit(1e-7);
        let mut samples = Vec::with_capacity(n);
        let mut worst = T::zero();
        for (k, q) in qs.iter().enumerate() {
            let cp = &r.checkpoints[k + 1];
            let mut s = self.coords(*q, cp[0], cp[1]);
            let (res, bound) = match locus {
                Locus::NegativeSegment => ((s.x + s.y).abs(), tol7 * (T::one() + s.x.abs() + s.y.abs())),
                Locus::ImaginaryAxis => ((s.x_b - s.x_a).abs(), tol7 * (T::one() + s.x_a.abs() + s.x_b.abs())),
                Locus::LeftRay => ((s.x_b - s.x_a).abs(), T::lit(1e-6)),
            };
            s.residual = res;
            s.bound = bound;
            worst = worst.max(res / bound);
            samples.push(s);
        }
        Ok(LocusReport { locus, samples, worst, converged: r.converged, pass: r.converged && worst <= T::one() })
    }

    /// `x_γ(A₋)` along `(−4, 0)`, with local fits at both critical ends.
    pub fn anchor_a_minus(&self) -> Result<Anchor<T>, PeriodError> {
        let eps = self.singular_radius;
        let start = Complex::new(-eps, T::zero());
        let stop = Complex::new(T::lit(-4.0) + eps, T::zero());
        let (a, b) = self.standard_cycles(start, Region::Real)?;
        let r = self.continue_periods(&[start, stop], &[a, b], Some(cx(0.0, 0.0)))?;
        let (tail, tail_err) = self.singular_integrals(cx(-4.0, 0.0), &r.cycles)?;
        let ia = r.values[0] - tail[0];
        let ib = r.values[1] - tail[1];
        let s = self.coords(cx(-4.0, 0.0), ia, ib);
        let error = r.errors.iter().zip(&tail_err).fold(T::zero(), |m, (e, t)| m.max(*e + *t));
        Ok(Anchor { x_a: s.x_a, x_b: s.x_b, x: s.x, y: s.y, error })
    }
}
