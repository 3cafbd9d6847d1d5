//! Period derivatives of integer cycle combinations over a grid of base points.

use super::continuation::{route, Region};
use super::cycle::CyclePath;
use super::{PeriodEngine, PeriodError};
use crate::scalar::Real;
use num_complex::Complex;
use serde::Serialize;

/// `n_a·a + n_b·b + n_c·c` in the reference basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCombination {
    pub name: String,
    pub coeffs: [i64; 3],
}

impl CycleCombination {
    /// Parse `a`, `a-b`, `-a+2b`, `b+c`.
    pub fn parse(s: &str) -> Result<Self, PeriodError> {
        let bad = || PeriodError::Invalid(format!("bad cycle combination '{}'", s));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut coeffs = [0i64; 3];
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let digits = body.chars().take_while(|c| c.is_ascii_digit()).count();
            let k: i64 = if digits == 0 { 1 } else { body[..digits].parse().map_err(|_| bad())? };
            let slot = match body[digits..].chars().next() {
                Some('a') => 0,
                Some('b') => 1,
                Some('c') => 2,
                _ => return Err(bad()),
            };
            coeffs[slot] += sign * k;
            rest = &body[digits + 1..];
        }
        Ok(CycleCombination { name: compact, coeffs })
    }
}

/// One `(q, cycle)` entry of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord<T> {
    pub q: Complex<T>,
    pub cycle: String,
    pub value: Complex<T>,
    pub err: T,
    pub converged: bool,
}

/// Region used to reach `q` from `−2`: the real segment when `q ∈ (−4, 0)`, otherwise the closed
/// half plane containing `q`.
pub fn default_region<T: Real>(q: Complex<T>) -> Region {
    if q.im == T::zero() && q.re > T::lit(-4.0) && q.re < T::zero() {
        Region::Real
    } else if q.im >= T::zero() {
        Region::Upper
    } else {
        Region::Lower
    }
}

impl<T: Real> PeriodEngine<T> {
    /// `D_γ(q)` for each combination at every grid point, with the reference cycles carried
    /// from `−2` along [`route`]. Rows are ordered by grid point, then combination.
    pub fn sweep(&self, grid: &[Complex<T>], combos: &[CycleCombination]) -> Result<Vec<SweepRecord<T>>, PeriodError> {
        use rayon::prelude::*;
        let reference = CyclePath::<T>::reference();
        let rows: Vec<Vec<SweepRecord<T>>> = grid
            .par_iter()
            .map(|&q| {
                let path = route(q, default_region(q))?;
                let mut vals = Vec::with_capacity(3);
                for c in &reference {
                    let moved = self.transport_along(c, &path)?;
                    vals.push(moved.evaluate(self));
                }
                Ok(combos
                    .iter()
                    .map(|cb| {
                        let mut value = Complex::new(T::zero(), T::zero());
                        let mut err = T::zero();
                        let mut converged = true;
                        for (k, ev) in vals.iter().enumerate() {
                            if cb.coeffs[k] != 0 {
                                let w = T::lit(cb.coeffs[k] as f64);
                                value = value + ev.value * w;
                                err += ev.error * w.abs();
                                converged &= ev.converged;
                            }
                        }
                        SweepRecord { q, cycle: cb.name.clone(), value, err, converged }
                    })
                    .collect())
            })
            .collect::<Result<_, PeriodError>>()?;
        Ok(rows.into_iter().flatten().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations() {
        assert_eq!(CycleCombination::parse("a").unwrap().coeffs, [1, 0, 0]);
        assert_eq!(CycleCombination::parse("a-b").unwrap().coeffs, [1, -1, 0]);
        assert_eq!(CycleCombination::parse("-a + 2b").unwrap().coeffs, [-1, 2, 0]);
        assert_eq!(CycleCombination::parse("c+a+a").unwrap().coeffs, [2, 0, 1]);
        assert!(CycleCombination::parse("a*b").is_err());
        assert!(CycleCombination::parse("").is_err());
        assert!(CycleCombination::parse("2").is_err());
    }

    #[test]
    fn sweep_is_linear_in_cycles() {
        let e = PeriodEngine::<f64>::default();
        let combos: Vec<_> = ["a", "b", "a-b", "a+b"].iter().map(|s| CycleCombination::parse(s).unwrap()).collect();
        let grid = [Complex::new(-2.0, 0.0), Complex::new(1.0, 1.0), Complex::new(-1.0, -2.0)];
        let r = e.sweep(&grid, &combos).unwrap();
        assert_eq!(r.len(), 12);
        for row in r.chunks(4) {
            assert!(row.iter().all(|x| x.converged));
            assert!((row[2].value - (row[0].value - row[1].value)).norm() < 1e-12);
            assert!((row[3].value - (row[0].value + row[1].value)).norm() < 1e-12);
        }
        // D_a(−2) is real and negative, D_b(−2) imaginary.
        assert!((r[0].value.re + 3.37150).abs() < 1e-4 && r[0].value.im.abs() < 1e-10);
        assert!((r[1].value.im - 4.3130).abs() < 1e-3 && r[1].value.re.abs() < 1e-10);
        assert!(e.sweep(&[Complex::new(0.0, 0.0)], &combos).is_err());
    }
}
