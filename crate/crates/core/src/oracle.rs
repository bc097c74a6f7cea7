//! Independent numerical oracles.
//!
//! Nothing here calls into the closed forms it is used to check: the
//! quadrature integrates a density along a segment and the finite
//! differences only ever sample a scalar field.

use num_complex::Complex64;

const MAX_DEPTH: u32 = 60;

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    refine(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Length of the straight segment `[from, to]` measured in the conformal
/// metric `density(z)|dz|`.
pub fn segment_length<D: Fn(Complex64) -> f64>(
    density: D,
    from: Complex64,
    to: Complex64,
    tol: f64,
) -> f64 {
    let delta = to - from;
    let speed = delta.norm();
    adaptive_simpson(|s| density(from + delta * s) * speed, 0.0, 1.0, tol)
}

/// Central-difference gradient `(∂f/∂x, ∂f/∂y)` of a scalar field at `(x, y)`.
pub fn central_gradient<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64, h: f64) -> (f64, f64) {
    let dx = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
    let dy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
    (dx, dy)
}
