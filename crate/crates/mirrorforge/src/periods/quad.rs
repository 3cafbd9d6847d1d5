//! Adaptive Gauss-Kronrod (7/15) quadrature of complex-valued functions on a real interval.

use crate::scalar::Real;
use num_complex::Complex;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Integral estimate with an error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: Complex<T>,
    pub error: T,
    pub converged: bool,
    pub evaluations: usize,
}

/// One 15-point Kronrod panel on `[a, b]` (b may be less than a) with the embedded
/// 7-point Gauss estimate.
pub fn gk15<T: Real, F: FnMut(T) -> Complex<T>>(f: &mut F, a: T, b: T) -> (Complex<T>, T) {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let fc = f(mid);
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        k = k + (f1 + f2) * T::lit(WGK[j]);
        if j % 2 == 1 {
            g = g + (f1 + f2) * T::lit(WG[j / 2]);
        }
    }
    let k = k * half;
    let g = g * half;
    (k, (k - g).norm())
}

/// The 15 Kronrod nodes on `[-1, 1]` in increasing order with Kronrod and Gauss weights
/// (Gauss weight 0 at Kronrod-only nodes).
pub fn gk15_nodes<T: Real>() -> (Vec<T>, Vec<T>, Vec<T>) {
    let mut x = Vec::with_capacity(15);
    let mut wk = Vec::with_capacity(15);
    let mut wg = Vec::with_capacity(15);
    let gauss = |j: usize| if j % 2 == 1 { WG[j / 2] } else { 0.0 };
    for j in 0..7 {
        x.push(T::lit(-XGK[j]));
        wk.push(T::lit(WGK[j]));
        wg.push(T::lit(gauss(j)));
    }
    x.push(T::zero());
    wk.push(T::lit(WGK[7]));
    wg.push(T::lit(WG[3]));
    for j in (0..7).rev() {
        x.push(T::lit(XGK[j]));
        wk.push(T::lit(WGK[j]));
        wg.push(T::lit(gauss(j)));
    }
    (x, wk, wg)
}

/// Adaptive bisection until each panel's Kronrod-Gauss difference is below its share of
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T: Real, F: FnMut(T) -> Complex<T>>(mut f: F, a: T, b: T, abs_tol: T, rel_tol: T, max_depth: u32) -> QuadResult<T> {
    let (whole, err) = gk15(&mut f, a, b);
    let mut evals = 15;
    let scale = whole.norm();
    let tol = abs_tol.max(rel_tol * scale);
    if err <= tol {
        return QuadResult { value: whole, error: err, converged: true, evaluations: evals };
    }
    let mut stack = vec![(a, b, whole, err, 0u32)];
    let mut total = Complex::new(T::zero(), T::zero());
    let mut total_err = T::zero();
    let mut converged = true;
    let width = (b - a).abs();
    while let Some((x0, x1, v, e, depth)) = stack.pop() {
        let share = tol * ((x1 - x0).abs() / width).max(T::lit(1e-3));
        if e <= share || depth >= max_depth {
            if e > share {
                converged = false;
            }
            total = total + v;
            total_err += e;
            continue;
        }
        let m = (x0 + x1) * T::lit(0.5);
        let (v1, e1) = gk15(&mut f, x0, m);
        let (v2, e2) = gk15(&mut f, m, x1);
        evals += 30;
        stack.push((x0, m, v1, e1, depth + 1));
        stack.push((m, x1, v2, e2, depth + 1));
    }
    QuadResult { value: total, error: total_err, converged, evaluations: evals }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x: f64| Complex::new(x * x, x), 0.0, 1.0, 1e-14, 1e-14, 20);
        assert!((r.value - Complex::new(1.0 / 3.0, 0.5)).norm() < 1e-14);
    }

    #[test]
    fn reversed_interval() {
        let r = integrate(|x: f64| Complex::new(x.exp(), 0.0), 1.0, 0.0, 1e-13, 1e-13, 20);
        assert!((r.value.re + (1f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn peaked() {
        let r = integrate(|x: f64| Complex::new(1.0 / (1e-4 + x * x), 0.0), -1.0, 1.0, 1e-10, 1e-12, 40);
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!(r.converged);
        assert!((r.value.re - exact).abs() < 1e-8 * exact);
    }

    #[test]
    fn legendre_weights() {
        let gl = gauss_legendre(10);
        let s: f64 = gl.iter().map(|p| p.1).sum();
        assert!((s - 2.0).abs() < 1e-14);
        let x4: f64 = gl.iter().map(|p| p.1 * p.0.powi(4)).sum();
        assert!((x4 - 0.4).abs() < 1e-14);
    }

    #[test]
    fn single_precision() {
        let r = integrate(|x: f32| Complex::new(x.sin(), 0.0), 0.0, std::f32::consts::PI, 1e-5, 1e-5, 20);
        assert!((r.value.re - 2.0).abs() < 1e-5);
    }
}
