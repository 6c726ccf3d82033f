//! One-dimensional quadrature helpers.
//!
//! Adaptive Simpson refinement drives the measure moments; the fixed-step
//! variant backs quadrature whose step is chosen by a halving test.

use alloc::vec::Vec;

/// Maximum number of panels the adaptive scheme may create.
pub const MAX_PANELS: usize = 1 << 20;

/// Relative tolerance at which adaptive refinement halts.
pub const ADAPTIVE_REL_TOL: f64 = 1e-12;

/// Composite Simpson rule with `panels` even subdivisions of [a, b].
pub fn simpson_fixed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels >= 1);
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let x = a + h * i as f64;
        sum += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0
}

/// Adaptive Simpson on [a, b]: interval halving until the local refinement
/// changes the estimate by less than `rel_tol` relative to the running total,
/// with a hard cap of [`MAX_PANELS`] leaf intervals.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let scale = estimate_scale(f, a, b);
    let mut leaves = 0usize;
    adaptive_step(f, a, b, fa, fm, fb, whole, rel_tol * scale.max(f64::MIN_POSITIVE), 0, &mut leaves)
}

fn estimate_scale<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    // Coarse magnitude estimate so the absolute halting threshold tracks the
    // integral's size rather than cancelling contributions.
    let n = 32;
    let h = (b - a) / n as f64;
    let mut s = 0.0;
    for i in 0..n {
        let x = a + h * (i as f64 + 0.5);
        s += f(x).abs();
    }
    s * h.abs()
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    abs_tol: f64,
    depth: u32,
    leaves: &mut usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth > 0 && (delta.abs() <= 15.0 * abs_tol || *leaves >= MAX_PANELS || depth >= 48) {
        *leaves += 2;
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, abs_tol * 0.5, depth + 1, leaves)
        + adaptive_step(f, m, b, fm, frm, fb, right, abs_tol * 0.5, depth + 1, leaves)
}

/// Trapezoid rule over uniformly spaced samples with step `h`.
pub fn trapezoid_samples(values: &[f64], h: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    (0.5 * (values[0] + values[values.len() - 1]) + inner) * h
}

/// Cumulative integral of `f` from `origin` to each of the given points,
/// each computed by composite Simpson with the step halved until the result
/// moves by less than `rel_tol` relatively.
pub fn integrals_from_origin<F: Fn(f64) -> f64>(
    f: &F,
    origin: f64,
    points: &[f64],
    rel_tol: f64,
) -> Vec<f64> {
    points
        .iter()
        .map(|&x| {
            if x == origin {
                return 0.0;
            }
            let mut panels = 8usize;
            let mut prev = simpson_fixed(f, origin, x, panels);
            loop {
                panels *= 2;
                let next = simpson_fixed(f, origin, x, panels);
                let scale = next.abs().max(1.0);
                if (next - prev).abs() <= rel_tol * scale || panels >= MAX_PANELS {
                    return next;
                }
                prev = next;
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    #[allow(unused_imports)]
    use num_traits::Float; // no_std method resolution

    #[test]
    fn simpson_is_exact_on_cubics() {
        let f = |x: f64| 3.0 * x * x * x - x + 2.0;
        // Exact integral over [0, 2]: 3*4 - 2 + 4 = 14.
        assert_relative_eq!(simpson_fixed(&f, 0.0, 2.0, 1), 14.0, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_handles_peaked_integrands() {
        // int_0^9 r^21 exp(-r^2) dr = Gamma(11)/2 up to an e^{-81} tail.
        let f = |r: f64| r.powi(21) * (-r * r).exp();
        let exact = 3628800.0 / 2.0; // Gamma(11)/2 = 10!/2
        let got = adaptive_simpson(&f, 0.0, 9.0, 1e-12);
        assert_relative_eq!(got, exact, max_relative = 1e-10);
    }

    #[test]
    fn cumulative_integrals_match_closed_form() {
        let f = |x: f64| x * x;
        let pts = [0.5, 1.0, 2.0, -1.5];
        let got = integrals_from_origin(&f, 0.0, &pts, 1e-12);
        for (g, &x) in got.iter().zip(pts.iter()) {
            assert_relative_eq!(*g, x * x * x / 3.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn trapezoid_basic() {
        let vals = [0.0, 1.0, 2.0, 3.0];
        assert_relative_eq!(trapezoid_samples(&vals, 0.5), 2.25, max_relative = 1e-15);
    }
}
