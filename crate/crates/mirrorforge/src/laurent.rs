//! Laurent polynomials in two variables with exact coefficients.

use crate::scalar::Coeff;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector in ℤ².
pub type Exp = [i64; 2];

/// A finite sum of monomials `c·x^a·y^b`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPolynomial<C> {
    terms: BTreeMap<Exp, C>,
}

impl<C: Coeff> Default for LaurentPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPolynomial<C> {
    pub fn zero() -> Self {
        LaurentPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial([0, 0], C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0, 0], c)
    }

    pub fn monomial(e: Exp, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// Build from (exponent, coefficient) pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (Exp, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn coeff(&self, e: Exp) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exp> {
        self.terms.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a.clone() * c.clone())))
    }

    /// Multiply by the monomial `x^s[0] y^s[1]`.
    pub fn shift(&self, s: Exp) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| ([e[0] + s[0], e[1] + s[1]], c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Monomial change of variables `x^e ↦ x^(m·e)` for an integer matrix `m`.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            ([m[0][0] * e[0] + m[0][1] * e[1], m[1][0] * e[0] + m[1][1] * e[1]], c.clone())
        }))
    }

    /// Coefficient-wise map into another ring.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPolynomial<D> {
        LaurentPolynomial::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Group terms by the exponent of `y`; each slice is a polynomial in `x` alone.
    pub fn y_slices(&self) -> BTreeMap<i64, LaurentPolynomial<C>> {
        let mut out: BTreeMap<i64, LaurentPolynomial<C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e[1]).or_default().add_term([e[0], 0], c.clone());
        }
        out
    }

    /// Is this a univariate Laurent polynomial in `x`?
    pub fn is_x_only(&self) -> bool {
        self.terms.keys().all(|e| e[1] == 0)
    }

    /// Smallest and largest `x` exponent.
    pub fn x_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|e| e[0]).min()?;
        let hi = self.terms.keys().map(|e| e[0]).max()?;
        Some((lo, hi))
    }

    /// Exact quotient of two `x`-only Laurent polynomials, or `None` when the division leaves a
    /// remainder (or the coefficient ring cannot divide exactly).
    pub fn div_exact_x(&self, d: &Self) -> Option<Self> {
        if d.is_zero() || !self.is_x_only() || !d.is_x_only() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dlo, dhi) = d.x_range()?;
        let lead = d.coeff([dhi, 0]);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top degree; the loop terminates once the remainder's
        // top degree drops below the span of d plus the remainder's bottom degree.
        while let Some((rlo, rhi)) = rem.x_range() {
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let rc = rem.coeff([rhi, 0]);
            let qc = rc.clone() / lead.clone();
            if qc.clone() * lead.clone() != rc {
                return None;
            }
            let qe = rhi - dhi;
            let step = Self::monomial([qe, 0], qc);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Render with the given variable names, e.g. `["x", "y"]`.
    pub fn fmt_with(&self, vars: [&str; 2]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut cs = format!("{}", c);
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (k, v) in vars.iter().enumerate() {
                match e[k] {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    p => factors.push(format!("{}^{}", v, p)),
                }
            }
            if factors.is_empty() {
                out.push_str(&cs);
            } else {
                if cs != "1" {
                    out.push_str(&cs);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(["x", "y"]))
    }
}

impl<C: Coeff> fmt::Debug for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self)
    }
}

impl<C: Coeff> Add for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn add(self, rhs: Self) -> LaurentPolynomial<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn sub(self, rhs: Self) -> LaurentPolynomial<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn mul(self, rhs: Self) -> LaurentPolynomial<C> {
        let mut out = LaurentPolynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term([a[0] + b[0], a[1] + b[1]], ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn neg(self) -> LaurentPolynomial<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coeff> Add for LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn neg(self) -> Self {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[([i64; 2], i64)]) -> LaurentPolynomial<i64> {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn zero_terms_dropped() {
        let a = p(&[([1, 0], 1), ([0, 1], 2)]);
        let b = p(&[([1, 0], -1)]);
        let s = &a + &b;
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff([0, 1]), 2);
    }

    #[test]
    fn binomial_square() {
        let a = p(&[([0, 0], 1), ([1, 0], 1)]);
        let sq = a.pow(2);
        assert_eq!(sq, p(&[([0, 0], 1), ([1, 0], 2), ([2, 0], 1)]));
    }

    #[test]
    fn exact_division() {
        // (x + 2 + 1/x) / (1 + x) = 1 + 1/x
        let n = p(&[([1, 0], 1), ([0, 0], 2), ([-1, 0], 1)]);
        let d = p(&[([0, 0], 1), ([1, 0], 1)]);
        assert_eq!(n.div_exact_x(&d).unwrap(), p(&[([0, 0], 1), ([-1, 0], 1)]));
        let bad = p(&[([0, 0], 1), ([2, 0], 1)]);
        assert!(bad.div_exact_x(&d).is_none());
    }

    #[test]
    fn printing() {
        let a = p(&[([2, -1], 1), ([0, -1], 6), ([-1, 0], -2)]);
        assert_eq!(a.fmt_with(["x", "y"]), "x^2*y^-1 + 6*y^-1 - 2*x^-1");
    }
}
