//! Truncated Novikov series, `A_n` chart atlases and their valuation skeletons.

use crate::scalar::Coeff;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NovikovError {
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("inverse leaves no correct terms below the cutoff")]
    PrecisionExhausted,
    #[error("point is not in the chart overlap: {0}")]
    NotInOverlap(&'static str),
    #[error("chart index {0} out of range 1..={1}")]
    ChartIndex(usize, usize),
    #[error("series parse error: {0}")]
    Parse(String),
    #[error("blowdown relation uv = z^n fails at the working cutoff")]
    RelationFails,
}

/// Exponent type of a series: exact rationals or tolerance-merged floats.
pub trait Exponent:
    Clone + PartialOrd + Debug + Display + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> + Send + Sync + 'static
{
    fn zero() -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Equality used when merging terms.
    fn same(&self, o: &Self) -> bool;
    fn times(&self, k: i64) -> Self {
        let mut acc = Self::zero();
        let step = if k < 0 { -self.clone() } else { self.clone() };
        for _ in 0..k.abs() {
            acc = acc + step.clone();
        }
        acc
    }
}

impl Exponent for Ratio<i64> {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Ratio::new(n, d)
    }
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
    fn same(&self, o: &Self) -> bool {
        self == o
    }
    fn times(&self, k: i64) -> Self {
        self * Ratio::from_integer(k)
    }
}

impl Exponent for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn same(&self, o: &Self) -> bool {
        self == o
    }
    fn times(&self, k: i64) -> Self {
        self * BigRational::from_integer(BigInt::from(k))
    }
}

/// Float exponents merge within this distance.
pub const EXP_EPS: f64 = 1e-12;

impl Exponent for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn same(&self, o: &Self) -> bool {
        (self - o).abs() <= EXP_EPS
    }
    fn times(&self, k: i64) -> Self {
        self * k as f64
    }
}

/// Coefficient field of a series.
pub trait SeriesCoeff: Coeff {
    fn from_ratio(n: i64, d: i64) -> Self;
}

impl SeriesCoeff for Ratio<i64> {
    fn from_ratio(n: i64, d: i64) -> Self {
        Ratio::new(n, d)
    }
}

impl SeriesCoeff for BigRational {
    fn from_ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
}

impl SeriesCoeff for f64 {
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
}

impl SeriesCoeff for Complex<f64> {
    fn from_ratio(n: i64, d: i64) -> Self {
        Complex::new(n as f64 / d as f64, 0.0)
    }
}

/// `Σ a_i T^{A_i}` with strictly increasing exponents, known exactly below `cutoff`
/// (`None` means the series is exact).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NovikovScalar<C, E> {
    terms: Vec<(E, C)>,
    cutoff: Option<E>,
}

fn min_cut<E: Exponent>(a: Option<E>, b: Option<E>) -> Option<E> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if a <= b { a } else { b }),
    }
}

fn cut_add<E: Exponent>(a: &Option<E>, s: &E) -> Option<E> {
    a.as_ref().map(|a| a.clone() + s.clone())
}

impl<C: SeriesCoeff, E: Exponent> NovikovScalar<C, E> {
    pub fn zero() -> Self {
        NovikovScalar { terms: Vec::new(), cutoff: None }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, E::zero())
    }

    /// `c T^e`.
    pub fn monomial(c: C, e: E) -> Self {
        Self::from_terms(vec![(e, c)], None)
    }

    /// `T^e`.
    pub fn t(e: E) -> Self {
        Self::monomial(C::one(), e)
    }

    pub fn from_terms(terms: Vec<(E, C)>, cutoff: Option<E>) -> Self {
        let mut s = NovikovScalar { terms, cutoff };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        self.terms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        let mut merged: Vec<(E, C)> = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.0.same(&e) => last.1 = last.1.clone() + c,
                _ => merged.push((e, c)),
            }
        }
        let cut = self.cutoff.clone();
        merged.retain(|(e, c)| !c.is_zero() && cut.as_ref().map_or(true, |k| e < k));
        self.terms = merged;
    }

    pub fn terms(&self) -> &[(E, C)] {
        &self.terms
    }

    pub fn cutoff(&self) -> Option<&E> {
        self.cutoff.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_none()
    }

    /// Zero as far as it is known.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent, `None` for zero.
    pub fn val(&self) -> Option<E> {
        self.terms.first().map(|t| t.0.clone())
    }

    pub fn leading(&self) -> Option<(E, C)> {
        self.terms.first().cloned()
    }

    /// Coefficient of `T^e`.
    pub fn coeff_at(&self, e: &E) -> C {
        self.terms.iter().find(|t| t.0.same(e)).map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    /// Coefficient of `T^0` of an element of `Λ_0`.
    pub fn constant_coeff(&self) -> C {
        self.coeff_at(&E::zero())
    }

    /// In `Λ_0`: no negative exponents.
    pub fn in_lambda0(&self) -> bool {
        self.val().map_or(true, |v| v >= E::zero())
    }

    /// In `Λ_+`: all exponents positive.
    pub fn in_lambda_plus(&self) -> bool {
        self.val().map_or(true, |v| v > E::zero() && !v.same(&E::zero()))
    }

    /// In `Λ_0^×`: valuation zero.
    pub fn is_unit0(&self) -> bool {
        self.val().map_or(false, |v| v.same(&E::zero()))
    }

    /// Drop every term at or above `e` and lower the cutoff accordingly.
    pub fn truncate(&self, e: &E) -> Self {
        let cutoff = min_cut(self.cutoff.clone(), Some(e.clone()));
        Self::from_terms(self.terms.clone(), cutoff)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())).collect(), self.cutoff.clone())
    }

    /// Multiply by `T^s`.
    pub fn shift(&self, s: &E) -> Self {
        NovikovScalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone() + s.clone(), c.clone())).collect(),
            cutoff: cut_add(&self.cutoff, s),
        }
    }

    fn val_or_cut(&self) -> Option<E> {
        self.val().or_else(|| self.cutoff.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Self::from_terms(terms, min_cut(self.cutoff.clone(), o.cutoff.clone()))
    }

    pub fn neg(&self) -> Self {
        NovikovScalar { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(), cutoff: self.cutoff.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Product with cutoff `min(E1 + val y, E2 + val x)`.
    pub fn mul(&self, o: &Self) -> Self {
        let c1 = o.val_or_cut().and_then(|a2| cut_add(&self.cutoff, &a2));
        let c2 = self.val_or_cut().and_then(|a1| cut_add(&o.cutoff, &a1));
        let cutoff = match (&self.cutoff, &o.cutoff) {
            (None, None) => None,
            _ => min_cut(c1, c2),
        };
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (e1, a) in &self.terms {
            for (e2, b) in &o.terms {
                let e = e1.clone() + e2.clone();
                if cutoff.as_ref().map_or(true, |k| &e < k) {
                    terms.push((e, a.clone() * b.clone()));
                }
            }
        }
        Self::from_terms(terms, cutoff)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Product truncated at `working`.
    pub fn mul_to(&self, o: &Self, working: &E) -> Self {
        self.truncate(working).mul(&o.truncate(working)).truncate(working)
    }

    /// Inverse in `Λ`, correct below `min(working, E - 2 val x)`.
    pub fn inv(&self, working: &E) -> Result<Self, NovikovError> {
        let (alpha, c) = self.leading().ok_or(NovikovError::InverseOfZero)?;
        let cinv = C::one() / c.clone();
        // x = c T^α (1 + y) with y in Λ_+.
        let rel = self.shift(&-alpha.clone()).scale(&cinv);
        let y = rel.sub(&Self::one());
        let s_cut = min_cut(Some(working.clone() + alpha.clone()), cut_add(&self.cutoff, &-alpha.clone()).map(|e| e));
        let s_cut = s_cut.expect("working cutoff is finite");
        if s_cut <= E::zero() || s_cut.same(&E::zero()) {
            return Err(NovikovError::PrecisionExhausted);
        }
        let exact = self.cutoff.is_none() && y.is_zero();
        let mut sum = Self::one();
        let mut term = Self::one();
        let ny = y.neg().truncate(&s_cut);
        loop {
            term = term.mul(&ny).truncate(&s_cut);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
        }
        let mut out = sum.truncate(&s_cut).shift(&-alpha).scale(&cinv);
        if exact {
            out.cutoff = None;
        }
        Ok(out)
    }

    /// `x^k` for any integer `k`.
    pub fn powi(&self, k: i64, working: &E) -> Result<Self, NovikovError> {
        if k >= 0 {
            Ok(self.pow(k as u32).truncate(working))
        } else {
            Ok(self.inv(working)?.pow((-k) as u32).truncate(working))
        }
    }

    /// `n`-th root of an element of `1 + Λ_+`, by the binomial series.
    pub fn nth_root_one_plus(&self, n: u32, working: &E) -> Result<Self, NovikovError> {
        let y = self.sub(&Self::one()).truncate(working);
        if !y.in_lambda_plus() {
            return Err(NovikovError::NotInOverlap("root needs an element of 1 + Λ_+"));
        }
        let mut sum = Self::one();
        let mut term = Self::one();
        let mut binom = C::one();
        let mut k: i64 = 0;
        loop {
            // binom(1/n, k+1) = binom(1/n, k) * (1/n - k)/(k+1)
            binom = binom * C::from_ratio(1 - (n as i64) * k, (n as i64) * (k + 1));
            k += 1;
            term = term.mul(&y).truncate(working);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term.scale(&binom));
        }
        Ok(sum.truncate(working))
    }

    /// Equal below `e` (and below both cutoffs).
    pub fn eq_up_to(&self, o: &Self, e: &E) -> bool {
        let cut = min_cut(min_cut(self.cutoff.clone(), o.cutoff.clone()), Some(e.clone())).unwrap();
        self.sub(o).truncate(&cut).is_zero()
    }

    /// Render as `2T^0 + 1T^1/2 - 3T^2`.
    pub fn to_literal(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mut cs = format!("{}", c);
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            out.push_str(&format!("{}T^{}", cs, e));
        }
        out
    }
}

impl<C: SeriesCoeff, E: Exponent> Display for NovikovScalar<C, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())?;
        if let Some(k) = &self.cutoff {
            write!(f, " + O(T^{})", k)?;
        }
        Ok(())
    }
}

impl<C: SeriesCoeff, E: Exponent> PartialEq for NovikovScalar<C, E> {
    fn eq(&self, o: &Self) -> bool {
        self.terms.len() == o.terms.len()
            && self.terms.iter().zip(&o.terms).all(|(a, b)| a.0.same(&b.0) && a.1 == b.1)
            && match (&self.cutoff, &o.cutoff) {
                (None, None) => true,
                (Some(a), Some(b)) => a.same(b),
                _ => false,
            }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<C: SeriesCoeff, E: Exponent> $tr for &NovikovScalar<C, E> {
            type Output = NovikovScalar<C, E>;
            fn $m(self, o: Self) -> NovikovScalar<C, E> {
                NovikovScalar::$m(self, o)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<C: SeriesCoeff, E: Exponent> Neg for &NovikovScalar<C, E> {
    type Output = NovikovScalar<C, E>;
    fn neg(self) -> NovikovScalar<C, E> {
        NovikovScalar::neg(self)
    }
}

/// Split a decimal or fraction literal into `n/d`.
fn parse_ratio(s: &str) -> Result<(i64, i64), NovikovError> {
    let err = || NovikovError::Parse(format!("bad number '{}'", s));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: i64 = a.trim().parse().map_err(|_| err())?;
        let d: i64 = b.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        return Ok((n, d));
    }
    if let Some((a, b)) = s.split_once('.') {
        let neg = a.starts_with('-');
        let ip: i64 = if a.is_empty() || a == "-" { 0 } else { a.parse().map_err(|_| err())? };
        let d = 10i64.checked_pow(b.len() as u32).ok_or_else(err)?;
        let fp: i64 = if b.is_empty() { 0 } else { b.parse().map_err(|_| err())? };
        let n = ip.abs() * d + fp;
        return Ok((if neg { -n } else { n }, d));
    }
    Ok((s.parse().map_err(|_| err())?, 1))
}

/// Parse `2T^0 + 1T^0.5 - 3T^2` (coefficients and exponents may be decimals or fractions;
/// a bare number is a constant, a bare `T^e` has coefficient 1).
pub fn parse_series<C: SeriesCoeff, E: Exponent>(s: &str) -> Result<NovikovScalar<C, E>, NovikovError> {
    let mut terms = Vec::new();
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(NovikovError::Parse("empty series".into()));
    }
    // Split on +/- that are not part of an exponent.
    let mut pieces: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && prev != Some('^') {
            pieces.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        prev = Some(ch);
    }
    pieces.push(cur);
    for p in pieces {
        let (sign, body) = match p.strip_prefix('-') {
            Some(b) => (-1, b.to_string()),
            None => (1, p.trim_start_matches('+').to_string()),
        };
        let (cpart, epart) = match body.split_once('T') {
            Some((c, e)) => {
                let e = e.strip_prefix('^').unwrap_or(if e.is_empty() { "1" } else { e });
                (c.trim_end_matches('*').to_string(), e.to_string())
            }
            None => (body.clone(), "0".to_string()),
        };
        let (cn, cd) = if cpart.is_empty() { (1, 1) } else { parse_ratio(&cpart)? };
        let (en, ed) = parse_ratio(&epart)?;
        terms.push((E::from_ratio(en, ed), C::from_ratio(sign * cn, cd)));
    }
    Ok(NovikovScalar::from_terms(terms, None))
}

/// A point of the `A_n` atlas in one chart.
#[derive(Clone, Debug, PartialEq)]
pub enum ChartPoint<C: SeriesCoeff, E: Exponent> {
    /// Holonomy coordinates `(w, z)`.
    Torus { w: NovikovScalar<C, E>, z: NovikovScalar<C, E> },
    /// Sphere chart `j` (1-based) with `(u_j, v_j)`.
    Sphere { j: usize, u: NovikovScalar<C, E>, v: NovikovScalar<C, E> },
}

/// `(u_i, v_i) = (u^2 v, u^{-1})` from chart `i+1`.
pub fn transition_sphere_down<C: SeriesCoeff, E: Exponent>(
    u: &NovikovScalar<C, E>,
    v: &NovikovScalar<C, E>,
    working: &E,
) -> Result<(NovikovScalar<C, E>, NovikovScalar<C, E>), NovikovError> {
    if !u.is_unit0() {
        return Err(NovikovError::NotInOverlap("u_{i+1} must lie in Λ_0^×"));
    }
    Ok((u.mul(u).mul(v).truncate(working), u.inv(working)?))
}

/// `(u_{i+1}, v_{i+1}) = (v^{-1}, u v^2)` from chart `i`.
pub fn transition_sphere_up<C: SeriesCoeff, E: Exponent>(
    u: &NovikovScalar<C, E>,
    v: &NovikovScalar<C, E>,
    working: &E,
) -> Result<(NovikovScalar<C, E>, NovikovScalar<C, E>), NovikovError> {
    if !v.is_unit0() {
        return Err(NovikovError::NotInOverlap("v_i must lie in Λ_0^×"));
    }
    Ok((v.inv(working)?, u.mul(v).mul(v).truncate(working)))
}

/// `(w, z) = (u_1, u_1 v_1 - 1)`.
pub fn transition_sphere_to_torus<C: SeriesCoeff, E: Exponent>(
    u1: &NovikovScalar<C, E>,
    v1: &NovikovScalar<C, E>,
    working: &E,
) -> Result<(NovikovScalar<C, E>, NovikovScalar<C, E>), NovikovError> {
    if !u1.is_unit0() {
        return Err(NovikovError::NotInOverlap("u_1 must lie in Λ_0^×"));
    }
    let z = u1.mul(v1).truncate(working).sub(&NovikovScalar::one());
    Ok((u1.truncate(working), z))
}

/// `(u_1, v_1) = (w, (1+z)/w)`; lands in the sphere chart only when `1+z ∈ Λ_+`.
pub fn transition_torus_to_sphere<C: SeriesCoeff, E: Exponent>(
    w: &NovikovScalar<C, E>,
    z: &NovikovScalar<C, E>,
    working: &E,
) -> Result<(NovikovScalar<C, E>, NovikovScalar<C, E>), NovikovError> {
    if !w.is_unit0() {
        return Err(NovikovError::NotInOverlap("w must lie in Λ_0^×"));
    }
    let zt = z.add(&NovikovScalar::one());
    if !zt.truncate(working).in_lambda_plus() {
        return Err(NovikovError::NotInOverlap("1 + z must lie in Λ_+"));
    }
    Ok((w.truncate(working), zt.mul(&w.inv(working)?).truncate(working)))
}

/// Membership of a point `(u, v, z̃)` of `uv = z̃^n` in the charts of the atlas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub spheres: Vec<usize>,
    pub torus: bool,
}

impl Membership {
    pub fn is_orphan(&self) -> bool {
        self.spheres.is_empty() && !self.torus
    }
}

/// The `A_{n-1}` atlas: sphere charts `1..=n` and one torus chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnAtlas {
    pub n: usize,
}

impl AnAtlas {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "A_n atlas needs n >= 1");
        AnAtlas { n }
    }

    pub fn chart_count(&self) -> usize {
        self.n + 1
    }

    /// `(u, v, z̃)` with `u = u_j z̃^{j-1}`, `v = v_j z̃^{n-j}`, `z̃ = u_j v_j`.
    pub fn blowdown<C: SeriesCoeff, E: Exponent>(
        &self,
        p: &ChartPoint<C, E>,
        working: &E,
    ) -> Result<(NovikovScalar<C, E>, NovikovScalar<C, E>, NovikovScalar<C, E>), NovikovError> {
        let (j, u, v) = match p {
            ChartPoint::Sphere { j, u, v } => {
                if *j < 1 || *j > self.n {
                    return Err(NovikovError::ChartIndex(*j, self.n));
                }
                (*j, u.clone(), v.clone())
            }
            ChartPoint::Torus { w, z } => {
                let zt = z.add(&NovikovScalar::one());
                (1, w.clone(), zt.mul(&w.inv(working)?).truncate(working))
            }
        };
        let zt = u.mul(&v).truncate(working);
        let bu = u.mul(&zt.pow((j - 1) as u32)).truncate(working);
        let bv = v.mul(&zt.pow((self.n - j) as u32)).truncate(working);
        Ok((bu, bv, zt))
    }

    /// Coordinates in sphere chart `j`, when the point lies there.
    pub fn sphere_coords<C: SeriesCoeff, E: Exponent>(
        &self,
        j: usize,
        u: &NovikovScalar<C, E>,
        v: &NovikovScalar<C, E>,
        zt: &NovikovScalar<C, E>,
        working: &E,
    ) -> Result<(NovikovScalar<C, E>, NovikovScalar<C, E>), NovikovError> {
        if j < 1 || j > self.n {
            return Err(NovikovError::ChartIndex(j, self.n));
        }
        if zt.is_zero() {
            return match (u.is_zero(), v.is_zero()) {
                (false, true) if j == 1 => Ok((u.clone(), NovikovScalar::zero())),
                (true, false) if j == self.n => Ok((NovikovScalar::zero(), v.clone())),
                (true, true) => Ok((NovikovScalar::zero(), NovikovScalar::zero())),
                _ => Err(NovikovError::NotInOverlap("point not in this chart")),
            };
        }
        let uj = u.mul(&zt.powi(-((j - 1) as i64), working)?).truncate(working);
        let vj = v.mul(&zt.powi(-((self.n - j) as i64), working)?).truncate(working);
        if !uj.in_lambda0() || !vj.in_lambda0() || uj.mul(&vj).val().map_or(false, |s| s <= E::zero()) {
            return Err(NovikovError::NotInOverlap("point not in this chart"));
        }
        Ok((uj, vj))
    }

    /// The case analysis of the covering argument.
    pub fn membership<C: SeriesCoeff, E: Exponent>(
        &self,
        u: &NovikovScalar<C, E>,
        v: &NovikovScalar<C, E>,
        zt: &NovikovScalar<C, E>,
    ) -> Membership {
        let n = self.n;
        if zt.is_zero() {
            let spheres = match (u.is_zero(), v.is_zero()) {
                (false, _) => vec![1],
                (true, false) => vec![n],
                (true, true) => (1..=n).collect(),
            };
            return Membership { spheres, torus: false };
        }
        let s = zt.val().unwrap();
        let c0 = zt.constant_coeff();
        if s.same(&E::zero()) {
            // Only the torus chart can contain points with val z̃ = 0, and not the locus z̃ ∈ 1 + Λ_+.
            return Membership { spheres: vec![], torus: u.is_unit0() && c0 != C::one() };
        }
        let vu = u.val();
        let vv = v.val();
        let spheres = (1..=n)
            .filter(|&j| {
                let ok_u = vu.as_ref().map_or(true, |a| *a >= s.times((j - 1) as i64) || a.same(&s.times((j - 1) as i64)));
                let ok_v = vv.as_ref().map_or(true, |b| *b >= s.times((n - j) as i64) || b.same(&s.times((n - j) as i64)));
                ok_u && ok_v
            })
            .collect();
        Membership { spheres, torus: u.is_unit0() }
    }

    /// Valuation image of the charts for `val z̃ = s`: chart `j` is the segment from
    /// `((j-1)s, (n-j+1)s)` to `(js, (n-j)s)` in the `(val u, val v)` plane.
    pub fn skeleton(&self, s: f64) -> Skeleton {
        let n = self.n;
        let segments = (1..=n)
            .map(|j| SkeletonSegment {
                chart: j,
                start: [(j - 1) as f64 * s, (n - j + 1) as f64 * s],
                end: [j as f64 * s, (n - j) as f64 * s],
                lattice_length: s,
            })
            .collect();
        Skeleton { n, s, segments }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeletonSegment {
    pub chart: usize,
    pub start: [f64; 2],
    pub end: [f64; 2],
    pub lattice_length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Skeleton {
    pub n: usize,
    pub s: f64,
    pub segments: Vec<SkeletonSegment>,
}

impl Skeleton {
    /// Consecutive segments share endpoints.
    pub fn is_chain(&self) -> bool {
        self.segments.windows(2).all(|w| w[0].end == w[1].start)
    }
}

/// Skeleton for `val z̃ = s`.
pub fn skeleton_valuation_image(atlas: &AnAtlas, s: f64) -> Skeleton {
    atlas.skeleton(s)
}

/// A point of `ℙ^1_Λ` stored as a canonical representative.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint<C: SeriesCoeff, E: Exponent> {
    pub a: NovikovScalar<C, E>,
    pub b: NovikovScalar<C, E>,
}

impl<C: SeriesCoeff, E: Exponent> ProjectivePoint<C, E> {
    /// Divide by the coordinate of smaller valuation (the first one on ties), so that it
    /// becomes 1 and the other lies in `Λ_0`.
    pub fn new(a: NovikovScalar<C, E>, b: NovikovScalar<C, E>, working: &E) -> Result<Self, NovikovError> {
        let pick_a = match (a.val(), b.val()) {
            (None, None) => return Err(NovikovError::InverseOfZero),
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(x), Some(y)) => x <= y || x.same(&y),
        };
        if pick_a {
            let inv = a.inv(working)?;
            Ok(ProjectivePoint { a: NovikovScalar::one(), b: b.mul(&inv).truncate(working) })
        } else {
            let inv = b.inv(working)?;
            Ok(ProjectivePoint { a: a.mul(&inv).truncate(working), b: NovikovScalar::one() })
        }
    }
}

/// `b(u - u0) = a(v - v0)` below the working cutoff.
pub fn blowup_incidence<C: SeriesCoeff, E: Exponent>(
    point: (&NovikovScalar<C, E>, &NovikovScalar<C, E>),
    center: (&NovikovScalar<C, E>, &NovikovScalar<C, E>),
    line: (&NovikovScalar<C, E>, &NovikovScalar<C, E>),
    working: &E,
) -> bool {
    let du = point.0.sub(center.0);
    let dv = point.1.sub(center.1);
    let lhs = line.1.mul(&du);
    let rhs = line.0.mul(&dv);
    lhs.eq_up_to(&rhs, working)
}

/// Chart data of the del Pezzo mirror atlas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerCharts {
    pub corner: usize,
    pub multiplicity: i64,
    pub sphere_charts: usize,
    pub holonomy_direction: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelPezzoAtlas {
    pub corners: Vec<CornerCharts>,
    pub torus_charts: usize,
    pub chart_count: usize,
}

/// One torus chart plus an `A`-chain of `n_i = det(v_i, v_{i+1})` sphere charts per corner.
pub fn del_pezzo_chart_atlas(normals: &[[i64; 2]]) -> Result<DelPezzoAtlas, crate::disc_potentials::PotentialError> {
    let fan = crate::disc_potentials::MonotoneFanData::new(normals.to_vec())?;
    let corners: Vec<CornerCharts> = fan
        .multiplicities()
        .into_iter()
        .enumerate()
        .map(|(i, m)| CornerCharts {
            corner: i,
            multiplicity: m,
            sphere_charts: m as usize,
            holonomy_direction: fan.holonomy_direction(i),
        })
        .collect();
    let spheres: usize = corners.iter().map(|c| c.sphere_charts).sum();
    Ok(DelPezzoAtlas { corners, torus_charts: 1, chart_count: spheres + 1 })
}

pub type Q = Ratio<i64>;
/// Exact coefficients; sampled inverses and powers outgrow machine rationals.
pub type QCoeff = BigRational;
pub type QSeries = NovikovScalar<QCoeff, Q>;

/// Random rational series with the given valuation (`None` gives zero) and terms on a
/// grid of quarter exponents below `cutoff`.
pub fn random_series(rng: &mut ChaCha8Rng, val: Option<Q>, cutoff: &Q, max_terms: usize) -> QSeries {
    let Some(v) = val else {
        return QSeries::zero();
    };
    let mut lead = 0i64;
    while lead == 0 {
        lead = rng.gen_range(-4..=4);
    }
    let mut terms = vec![(v, QCoeff::from_integer(BigInt::from(lead)))];
    let extra = rng.gen_range(0..=max_terms);
    for _ in 0..extra {
        let step = Ratio::new(rng.gen_range(1..=8), 4);
        let e = v + step;
        if &e < cutoff {
            terms.push((e, <QCoeff as SeriesCoeff>::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))));
        }
    }
    QSeries::from_terms(terms, None)
}

fn random_positive_exp(rng: &mut ChaCha8Rng, max_quarters: i64) -> Q {
    Ratio::new(rng.gen_range(1..=max_quarters), 4)
}

/// Outcome of the `ℂ² − {uv = 1}` decomposition check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct C2Report {
    pub samples_per_stratum: usize,
    pub strata: Vec<String>,
    pub forward_failures: usize,
    pub backward_failures: usize,
    pub excluded_point_rejected: bool,
    pub witness: Option<String>,
    pub pass: bool,
}

/// LHS membership: `u, v ∈ Λ_0` and `uv - 1 ∈ Λ_0^×`.
fn in_lhs(u: &QSeries, v: &QSeries) -> bool {
    u.in_lambda0() && v.in_lambda0() && u.mul(v).sub(&QSeries::one()).is_unit0()
}

/// RHS membership: constant parts `(u0, v0)` with `u0 v0 ≠ 1`, remainder in `Λ_+^2`.
fn rhs_decomposition(u: &QSeries, v: &QSeries) -> Option<(QCoeff, QCoeff)> {
    if !u.in_lambda0() || !v.in_lambda0() {
        return None;
    }
    let u0 = u.constant_coeff();
    let v0 = v.constant_coeff();
    let ru = u.sub(&QSeries::constant(u0.clone()));
    let rv = v.sub(&QSeries::constant(v0.clone()));
    if &u0 * &v0 == QCoeff::one() || !ru.in_lambda_plus() || !rv.in_lambda_plus() {
        return None;
    }
    Some((u0, v0))
}

/// Both inclusions of `{(u,v,z̃) : uv = z̃, z̃ - 1 ∈ Λ_0^×} = (ℂ² − {uv=1}) + Λ_+²` on
/// sampled points of the strata `val uv > 0` (both or one coordinate in `Λ_+`) and
/// `val u = val v = 0`.
pub fn verify_c2_decomposition(samples: usize, seed: u64, cutoff: &Q) -> C2Report {
    let strata = ["both-positive", "u-unit-v-positive", "both-units"];
    let results: Vec<(usize, usize, Option<String>)> = strata
        .par_iter()
        .enumerate()
        .map(|(k, _)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1000 * k as u64));
            let mut fwd = 0;
            let mut bwd = 0;
            let mut witness = None;
            for _ in 0..samples {
                let (vu, vv) = match k {
                    0 => (random_positive_exp(&mut rng, 8), random_positive_exp(&mut rng, 8)),
                    1 => (<Q as Zero>::zero(), random_positive_exp(&mut rng, 8)),
                    _ => (<Q as Zero>::zero(), <Q as Zero>::zero()),
                };
                let mut u = random_series(&mut rng, Some(vu), cutoff, 4);
                let v = random_series(&mut rng, Some(vv), cutoff, 4);
                if k == 2 && u.constant_coeff() * v.constant_coeff() == QCoeff::one() {
                    u = u.add(&QSeries::one());
                }
                // Forward: LHS point decomposes.
                if in_lhs(&u, &v) && rhs_decomposition(&u, &v).is_none() {
                    fwd += 1;
                    witness.get_or_insert(format!("u = {}, v = {}", u.to_literal(), v.to_literal()));
                }
                // Backward: a constant pair with ab ≠ 1 plus Λ_+ perturbations lies in the LHS.
                let a = u.constant_coeff();
                let b = v.constant_coeff();
                let (eu, ev) = (random_positive_exp(&mut rng, 8), random_positive_exp(&mut rng, 8));
                let pu = random_series(&mut rng, Some(eu), cutoff, 3);
                let pv = random_series(&mut rng, Some(ev), cutoff, 3);
                let bu = QSeries::constant(a.clone()).add(&pu);
                let bv = QSeries::constant(b.clone()).add(&pv);
                if &a * &b != QCoeff::one() && !in_lhs(&bu, &bv) {
                    bwd += 1;
                    witness.get_or_insert(format!("a = {}, b = {}", a, b));
                }
            }
            (fwd, bwd, witness)
        })
        .collect();
    let forward_failures = results.iter().map(|r| r.0).sum();
    let backward_failures = results.iter().map(|r| r.1).sum();
    let witness = results.iter().find_map(|r| r.2.clone());
    let one = QSeries::one();
    let excluded_point_rejected = !in_lhs(&one, &one) && rhs_decomposition(&one, &one).is_none();
    C2Report {
        samples_per_stratum: samples,
        strata: strata.iter().map(|s| s.to_string()).collect(),
        forward_failures,
        backward_failures,
        excluded_point_rejected,
        witness,
        pass: forward_failures == 0 && backward_failures == 0 && excluded_point_rejected,
    }
}

/// Outcome of the chart-cover check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverReport {
    pub n: usize,
    pub samples: usize,
    pub orphans: usize,
    pub relation_failures: usize,
    pub transition_failures: usize,
    pub witness: Option<String>,
    pub pass: bool,
}

/// Sample points of `uv = z̃^n` across the strata and check that each lies in some chart,
/// that the chart coordinates blow down to the point, and that every available sphere
/// transition preserves `z̃` at the working cutoff.
pub fn verify_cover(n: usize, samples: usize, seed: u64, cutoff: &Q) -> CoverReport {
    let atlas = AnAtlas::new(n);
    let chunk = 50usize;
    let chunks = (samples + chunk - 1) / chunk;
    let results: Vec<(usize, usize, usize, Option<String>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ c as u64);
            let mut out = (0, 0, 0, None);
            let count = chunk.min(samples - c * chunk);
            for _ in 0..count {
                let (u, v, zt) = sample_an_point(&mut rng, n, cutoff);
                let m = atlas.membership(&u, &v, &zt);
                if m.is_orphan() {
                    out.0 += 1;
                    out.3.get_or_insert(format!("orphan u={} v={} z={}", u.to_literal(), v.to_literal(), zt.to_literal()));
                    continue;
                }
                for &j in &m.spheres {
                    match atlas.sphere_coords(j, &u, &v, &zt, cutoff) {
                        Ok((uj, vj)) => {
                            let p = ChartPoint::Sphere { j, u: uj.clone(), v: vj.clone() };
                            let ok = match atlas.blowdown(&p, cutoff) {
                                Ok((bu, bv, bz)) => bu.eq_up_to(&u, cutoff) && bv.eq_up_to(&v, cutoff) && bz.eq_up_to(&zt, cutoff),
                                Err(_) => false,
                            };
                            if !ok {
                                out.1 += 1;
                                out.3.get_or_insert(format!("blowdown mismatch in chart {}", j));
                            }
                            if j > 1 && uj.is_unit0() {
                                if let Ok((ui, vi)) = transition_sphere_down(&uj, &vj, cutoff) {
                                    if !ui.mul(&vi).eq_up_to(&uj.mul(&vj), cutoff) {
                                        out.2 += 1;
                                        out.3.get_or_insert(format!("z̃ not preserved leaving chart {}", j));
                                    }
                                }
                            }
                        }
                        Err(_) => {
                            out.1 += 1;
                            out.3.get_or_insert(format!("membership claims chart {} but coordinates fail", j));
                        }
                    }
                }
                if m.torus {
                    if let Ok((w, z)) = transition_sphere_to_torus(&u, &v.mul(&zt.powi(-((n - 1) as i64), cutoff).unwrap_or_else(|_| QSeries::zero())), cutoff) {
                        let p = ChartPoint::Torus { w, z };
                        if let Ok((bu, _, bz)) = atlas.blowdown(&p, cutoff) {
                            if !bu.eq_up_to(&u, cutoff) || !bz.eq_up_to(&zt, cutoff) {
                                out.1 += 1;
                                out.3.get_or_insert("torus blowdown mismatch".to_string());
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    let orphans = results.iter().map(|r| r.0).sum();
    let relation_failures = results.iter().map(|r| r.1).sum();
    let transition_failures = results.iter().map(|r| r.2).sum();
    let witness = results.iter().find_map(|r| r.3.clone());
    CoverReport {
        n,
        samples,
        orphans,
        relation_failures,
        transition_failures,
        witness,
        pass: orphans == 0 && relation_failures == 0 && transition_failures == 0,
    }
}

/// A random point of `{uv = z̃^n}` with `u, v ∈ Λ_0` and `z̃ - 1 ∈ Λ_0^×`, exact below `cutoff`.
pub fn sample_an_point(rng: &mut ChaCha8Rng, n: usize, cutoff: &Q) -> (QSeries, QSeries, QSeries) {
    match rng.gen_range(0..10) {
        // z̃ = 0: one coordinate vanishes.
        0 => {
            let u = if rng.gen_bool(0.5) { random_series(rng, Some(<Q as Zero>::zero()), cutoff, 3) } else { QSeries::zero() };
            let v = if u.is_zero() && rng.gen_bool(0.5) { random_series(rng, Some(<Q as Zero>::zero()), cutoff, 3) } else { QSeries::zero() };
            (u, v, QSeries::zero())
        }
        // val z̃ = 0 with constant coefficient away from 0 and 1.
        1 | 2 => {
            let mut zt = random_series(rng, Some(<Q as Zero>::zero()), cutoff, 3);
            if zt.constant_coeff() == QCoeff::one() {
                zt = zt.add(&QSeries::one());
            }
            let u = random_series(rng, Some(<Q as Zero>::zero()), cutoff, 3);
            let v = zt.pow(n as u32).mul(&u.inv(cutoff).expect("unit")).truncate(cutoff);
            (u.truncate(cutoff), v, zt.truncate(cutoff))
        }
        // val z̃ = s > 0, val u anywhere in [0, ns].
        _ => {
            let s = random_positive_exp(rng, 4);
            let zt = random_series(rng, Some(s), cutoff, 3);
            let total = s * Ratio::from_integer(n as i64);
            let quarters = (total * Ratio::from_integer(4)).to_integer();
            let a = Ratio::new(rng.gen_range(0..=quarters), 4);
            let u = random_series(rng, Some(a), cutoff, 3);
            // v = z̃^n / u, exact up to the working cutoff.
            let v = zt.pow(n as u32).mul(&u.inv(cutoff).expect("nonzero")).truncate(cutoff);
            (u.truncate(cutoff), v, zt.truncate(cutoff))
        }
    }
}

/// `(1 + Λ_+)^{1/n} = 1 + Λ_+`: roots of sampled elements exist and raise back; powers stay.
pub fn verify_root_power(n: u32, samples: usize, seed: u64, cutoff: &Q) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let e = random_positive_exp(&mut rng, 6);
        let y = random_series(&mut rng, Some(e), cutoff, 3);
        let x = QSeries::one().add(&y);
        let r = match x.nth_root_one_plus(n, cutoff) {
            Ok(r) => r,
            Err(_) => return false,
        };
        let back = r.pow(n).truncate(cutoff);
        back.eq_up_to(&x, cutoff)
            && r.sub(&QSeries::one()).in_lambda_plus()
            && x.pow(n).sub(&QSeries::one()).truncate(cutoff).in_lambda_plus()
    })
}

/// Absolute-value helper for reporting rational exponents.
pub fn q_abs(q: &Q) -> Q {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n, d)
    }

    fn k(n: i64, d: i64) -> QCoeff {
        <QCoeff as SeriesCoeff>::from_ratio(n, d)
    }

    fn s(lit: &str) -> QSeries {
        parse_series(lit).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let x = s("2T^0 + 1T^0.5 - 3T^2");
        assert_eq!(x.terms().len(), 3);
        assert_eq!(x.coeff_at(&q(1, 2)), k(1, 1));
        assert_eq!(x.to_literal(), "2T^0 + 1T^1/2 - 3T^2");
        assert_eq!(s("T^1/3 - 1/2"), QSeries::from_terms(vec![(q(1, 3), k(1, 1)), (q(0, 1), k(-1, 2))], None));
    }

    #[test]
    fn geometric_series() {
        let x = s("1 + T");
        let inv = x.inv(&q(6, 1)).unwrap();
        assert_eq!(inv.terms().len(), 6);
        assert!(x.mul(&inv).eq_up_to(&QSeries::one(), &q(6, 1)));
    }

    #[test]
    fn valuation_additive() {
        let a = QSeries::t(q(1, 2));
        let b = QSeries::t(q(7, 10));
        assert_eq!(a.mul(&b).val(), Some(q(6, 5)));
    }

    #[test]
    fn inverse_of_two_plus() {
        let x = s("2 + T^0.3");
        let inv = x.inv(&q(2, 1)).unwrap();
        assert_eq!(inv.terms()[0], (q(0, 1), k(1, 2)));
        assert_eq!(inv.terms()[1], (q(3, 10), k(-1, 4)));
        assert!(QSeries::zero().inv(&q(1, 1)).is_err());
    }

    #[test]
    fn cutoff_tracking() {
        let a = s("T + T^2").truncate(&q(3, 1));
        let b = s("T^1/2");
        let p = a.mul(&b);
        assert_eq!(p.cutoff(), Some(&q(7, 2)));
        let i = s("T^1 + T^2").truncate(&q(3, 1)).inv(&q(10, 1)).unwrap();
        // E - 2 val = 3 - 2 = 1
        assert_eq!(i.cutoff(), Some(&q(1, 1)));
    }

    #[test]
    fn transitions() {
        let one = QSeries::one();
        let t = QSeries::t(q(1, 1));
        let w = q(5, 1);
        let (ui, vi) = transition_sphere_down(&one, &t, &w).unwrap();
        assert!(ui.eq_up_to(&t, &w) && vi.eq_up_to(&one, &w));
        let (ui, vi) = transition_sphere_down(&one, &QSeries::zero(), &w).unwrap();
        assert!(ui.is_zero() && vi.eq_up_to(&one, &w));
        let (wt, z) = transition_sphere_to_torus(&one, &t, &w).unwrap();
        assert!(wt.eq_up_to(&one, &w));
        assert!(z.eq_up_to(&s("T - 1"), &w));
        let (u1, v1) = transition_torus_to_sphere(&wt, &z, &w).unwrap();
        assert!(u1.eq_up_to(&one, &w) && v1.eq_up_to(&t, &w));
        assert!(transition_sphere_down(&t, &one, &w).is_err());
    }

    #[test]
    fn up_down_round_trip() {
        let w = q(6, 1);
        let u = s("3 + T^1/2");
        let v = s("T + 2T^2");
        let (ui, vi) = transition_sphere_down(&u, &v, &w).unwrap();
        let (uu, vv) = transition_sphere_up(&ui, &vi, &w).unwrap();
        assert!(uu.eq_up_to(&u, &w) && vv.eq_up_to(&v, &w));
    }

    #[test]
    fn blowdown_n2() {
        let atlas = AnAtlas::new(2);
        let t = QSeries::t(q(1, 1));
        let (u, v, z) = atlas.blowdown(&ChartPoint::Sphere { j: 1, u: t.clone(), v: t.clone() }, &q(10, 1)).unwrap();
        let w = q(10, 1);
        assert!(u.eq_up_to(&t, &w));
        assert!(v.eq_up_to(&QSeries::t(q(3, 1)), &w));
        assert!(z.eq_up_to(&QSeries::t(q(2, 1)), &w));
        assert!(u.mul(&v).eq_up_to(&z.pow(2), &w));
        // the point lives only in chart 1
        assert_eq!(atlas.membership(&u, &v, &z).spheres, vec![1]);
    }

    #[test]
    fn n1_is_identity() {
        let atlas = AnAtlas::new(1);
        let u = s("T^1/2");
        let v = s("2T^1/3");
        let (bu, bv, bz) = atlas.blowdown(&ChartPoint::Sphere { j: 1, u: u.clone(), v: v.clone() }, &q(5, 1)).unwrap();
        let w = q(5, 1);
        assert!(bu.eq_up_to(&u, &w) && bv.eq_up_to(&v, &w));
        assert!(bz.eq_up_to(&u.mul(&v), &w));
    }

    #[test]
    fn membership_cases() {
        let atlas = AnAtlas::new(3);
        let u = s("2 + T");
        let zt = s("3");
        let v = zt.pow(3).mul(&u.inv(&q(5, 1)).unwrap()).truncate(&q(5, 1));
        let m = atlas.membership(&u, &v, &zt);
        assert!(m.torus && m.spheres.is_empty());
        let m = atlas.membership(&QSeries::zero(), &s("1"), &QSeries::zero());
        assert_eq!(m.spheres, vec![3]);
        let m = atlas.membership(&s("1"), &s("1"), &s("1"));
        assert!(m.is_orphan());
    }

    #[test]
    fn incidence() {
        let u0 = s("1");
        let v0 = s("2");
        let u = s("1 + T");
        let v = s("2 + 2T");
        let w = q(5, 1);
        assert!(blowup_incidence((&u, &v), (&u0, &v0), (&s("1"), &s("2")), &w));
        assert!(!blowup_incidence((&u, &v), (&u0, &v0), (&s("1"), &s("1")), &w));
        assert!(blowup_incidence((&u0, &v0), (&u0, &v0), (&s("1"), &s("1")), &w));
        let p = ProjectivePoint::new(s("2T"), s("4T"), &w).unwrap();
        assert!(p.b.eq_up_to(&s("2"), &w));
    }

    #[test]
    fn skeleton_chain() {
        let sk = skeleton_valuation_image(&AnAtlas::new(3), 1.0);
        assert_eq!(sk.segments.len(), 3);
        assert!(sk.is_chain());
        assert_eq!(sk.segments[0].start, [0.0, 3.0]);
        assert_eq!(sk.segments[2].end, [3.0, 0.0]);
    }

    #[test]
    fn dp_atlas_counts() {
        let a = del_pezzo_chart_atlas(&[[1, 1], [-1, 1], [-1, -1], [1, -1]]).unwrap();
        assert_eq!(a.chart_count, 9);
        let b = del_pezzo_chart_atlas(&[[1, 0], [0, 1], [-1, -1]]).unwrap();
        assert_eq!(b.chart_count, 4);
    }

    #[test]
    fn float_exponents_merge() {
        let a: NovikovScalar<f64, f64> = NovikovScalar::from_terms(vec![(0.1 + 0.2, 1.0), (0.3, 2.0)], None);
        assert_eq!(a.terms().len(), 1);
        assert_eq!(a.terms()[0].1, 3.0);
    }

    #[test]
    fn roots() {
        assert!(verify_root_power(3, 50, 7, &q(4, 1)));
    }
}
