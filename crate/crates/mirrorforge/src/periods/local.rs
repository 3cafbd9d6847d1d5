//! Local computations: the large-|q| contour for the `a`-period and the `xy = t` degeneration.

use super::quad::integrate;
use super::{unit_quadratic, PeriodEngine};

use crate::scalar::Real;
use num_complex::Complex;
use serde::Serialize;

/// The three contour pieces of `2 ∫_{p₂}^{p₁} dt / (t √((t + 1/t − q)² − 4))` at `q = i·x`:
/// the arc of radius `|p₂|` down to the positive real axis, the segment `[|p₂|, |p₁|]` and
/// the arc of radius `|p₁|` up to `p₁`. Principal square roots throughout.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AppendixB<T> {
    pub x: T,
    pub p1: Complex<T>,
    pub p2: Complex<T>,
    pub pieces: [Complex<T>; 3],
    pub total: Complex<T>,
    /// `x · Im(total)`.
    pub scaled: T,
    pub converged: bool,
}

pub fn appendix_b<T: Real>(x: T, engine: &PeriodEngine<T>) -> AppendixB<T> {
    let q = Complex::new(T::zero(), x);
    let two = T::lit(2.0);
    let [p1, p2] = unit_quadratic(q + Complex::new(two, T::zero()));
    let roots = super::raw_roots(q);
    // (t + 1/t − q)² − 4 = P(t)/t², with P factored to keep accuracy near the roots.
    let g2 = |t: Complex<T>| roots.iter().fold(Complex::new(T::one(), T::zero()), |acc, r| acc * (t - r)) / (t * t);
    // On an arc ending at the root `end`, the vanishing factor t − end is taken from the angle
    // offset δ directly: t − end = end·(e^{iδ} − 1).
    let g2_arc = |t: Complex<T>, end: Complex<T>, delta: T| {
        let j = (0..4).min_by(|&a, &b| (roots[a] - end).norm().partial_cmp(&(roots[b] - end).norm()).unwrap()).unwrap();
        let half = (delta / two).sin();
        let gap = end * Complex::new(-two * half * half, delta.sin());
        (0..4).filter(|&k| k != j).fold(gap, |acc, k| acc * (t - roots[k])) / (t * t)
    };
    let i = Complex::new(T::zero(), T::one());
    let (eps, big) = (p2.norm(), p1.norm());
    let (th0, th1) = (p2.arg(), p1.arg());
    let (tol, rtol, depth) = (engine.abs_tol, engine.rel_tol, engine.max_depth);
    // Arc from p2 to eps: θ = θ₀(1 − v²), root continued from v = 1 where t = eps > 0.
    let small = |v: T| {
        let th = th0 * (T::one() - v * v);
        Complex::new(th.cos(), th.sin()) * eps
    };
    let arc_small = continued_integral(|v| g2_arc(small(v), p2, -th0 * v * v), |v, root| i * two / root * (-two * th0 * v), tol, rtol, depth);
    // Segment eps..R with t = e^y; here G stays in the lower half plane.
    let seg = integrate(
        |y: T| {
            let t = Complex::new(y.exp(), T::zero());
            Complex::new(two, T::zero()) / g2(t).sqrt()
        },
        eps.ln(),
        big.ln(),
        tol,
        rtol,
        depth,
    );
    // Arc from R to p1: θ = θ₁(1 − v²).
    let large = |v: T| {
        let th = th1 * (T::one() - v * v);
        Complex::new(th.cos(), th.sin()) * big
    };
    let arc_big = continued_integral(|v| g2_arc(large(v), p1, -th1 * v * v), |v, root| i * two / root * (two * th1 * v), tol, rtol, depth);
    let pieces = [arc_small.value, seg.value, arc_big.value];
    let total = pieces[0] + pieces[1] + pieces[2];
    AppendixB {
        x,
        p1,
        p2,
        pieces,
        total,
        scaled: x * total.im,
        converged: arc_small.converged && seg.converged && arc_big.converged,
    }
}

/// `∫₀¹ h(v, √G(v)) dv` with the root seeded by the principal value at `v = 1` and
/// continued along a fixed grid towards `v = 0`, where `G` may vanish.
fn continued_integral<T: Real, G, H>(g: G, h: H, tol: T, rtol: T, depth: u32) -> super::quad::QuadResult<T>
where
    G: Fn(T) -> Complex<T>,
    H: Fn(T, Complex<T>) -> Complex<T>,
{
    let n = 4096;
    let mut grid: Vec<(Complex<T>, Complex<T>)> = Vec::with_capacity(n + 1);
    let mut val = g(T::one());
    let mut root = val.sqrt();
    grid.push((val, root));
    for k in (0..n).rev() {
        let v = T::lit(k as f64 / n as f64);
        let next = g(v);
        if next.norm() > T::zero() {
            root = root * (next / val).sqrt();
            val = next;
        }
        grid.push((val, root));
    }
    grid.reverse();
    let nt = T::lit(n as f64);
    integrate(
        |v: T| {
            let k = ((v * nt).to_usize().unwrap_or(0) + 1).min(n);
            let (gk, rk) = grid[k];
            h(v, rk * (g(v) / gk).sqrt())
        },
        T::zero(),
        T::one(),
        tol,
        rtol,
        depth,
    )
}

/// `(i/2) ∫ μ_t ∧ μ̄_t` over `t/√ε ≤ |x| ≤ √ε` on `xy = t` for `μ_t = f dx/x`, i.e.
/// `∫∫ |f|² dr dθ / r`.
pub fn degeneration_area_with<T: Real, F: Fn(Complex<T>, Complex<T>) -> Complex<T>>(t: T, eps: T, f: F) -> T {
    let lo = (t / eps.sqrt()).ln();
    let hi = eps.sqrt().ln();
    if t >= eps || hi <= lo {
        return T::zero();
    }
    let n = 64;
    let r = integrate(
        |rho: T| {
            let r = rho.exp();
            let mut acc = T::zero();
            for k in 0..n {
                let th = T::TAU() * T::lit(k as f64 / n as f64);
                let x = Complex::new(th.cos(), th.sin()) * r;
                let y = Complex::new(t, T::zero()) / x;
                acc += f(x, y).norm_sqr();
            }
            Complex::new(acc * T::TAU() / T::lit(n as f64), T::zero())
        },
        lo,
        hi,
        T::lit(1e-12),
        T::lit(1e-12),
        30,
    );
    r.value.re
}

/// [`degeneration_area_with`] for `f ≡ 1`.
pub fn degeneration_area<T: Real>(t: T, eps: T) -> T {
    degeneration_area_with(t, eps, |_, _| Complex::new(T::one(), T::zero()))
}

/// `∫₀^{2π} f(x₀e^{iθ}, y₀e^{−iθ}) dθ` with `y₀ = t/x₀`, by the trapezoidal rule doubled
/// until two successive estimates agree.
pub fn vanishing_cycle_period<T: Real, F: Fn(Complex<T>, Complex<T>) -> Complex<T>>(t: T, x0: T, f: F) -> Complex<T> {
    let y0 = t / x0;
    let rule = |n: usize| {
        let mut acc = Complex::new(T::zero(), T::zero());
        for k in 0..n {
            let th = T::TAU() * T::lit(k as f64 / n as f64);
            let e = Complex::new(th.cos(), th.sin());
            acc = acc + f(e * x0, e.conj() * y0);
        }
        acc * (T::TAU() / T::lit(n as f64))
    };
    let mut n = 16;
    let mut prev = rule(n);
    while n < 1 << 16 {
        n *= 2;
        let next = rule(n);
        if (next - prev).norm() <= T::lit(1e-13) * (T::one() + next.norm()) {
            return next;
        }
        prev = next;
    }
    prev
}
