//! Numerical integration helpers.
//!
//! Tanh-sinh quadrature: double-exponential decay of the transformed weights
//! absorbs integrable endpoint singularities such as `(x-a)^{alpha-1}`,
//! which is exactly what the fractional integration kernel produces. Spline
//! integrands are only piecewise-smooth, so there is also a helper that
//! splits at the knots and adds up the pieces.

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    /// The level refinement failed to settle within the tolerance.
    NonConvergent { estimate: f64, error: f64 },
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::NonConvergent { estimate, error } => write!(
                f,
                "quadrature did not converge (estimate {estimate:e}, error {error:e})"
            ),
        }
    }
}

impl core::error::Error for QuadError {}

const MAX_LEVEL: u32 = 11;
const T_MAX: f64 = 6.5;

/// Tanh-sinh quadrature of `f` over `(a, b)`.
///
/// `tol` is treated as an absolute tolerance against the scale of the
/// integral (floored at 1). Endpoint values are never requested, so `f` may
/// blow up integrably at `a` or `b`.
pub(crate) fn tanh_sinh(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, QuadError> {
    tanh_sinh_with_distances(|x, _, _| f(x), a, b, tol)
}

/// Tanh-sinh quadrature where the integrand also receives its exact
/// distances to the two endpoints.
///
/// Near an endpoint the abscissa `x` alone cannot resolve the distance
/// (`b - offset` rounds back to `b` once `offset < ulp(b)`), which starves
/// integrable singularities of their near-endpoint mass. Integrands with a
/// known singular factor use the distance arguments for that factor
/// instead.
pub(crate) fn tanh_sinh_with_distances(
    f: impl Fn(f64, f64, f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, QuadError> {
    if a == b {
        return Ok(0.0);
    }
    let width = b - a;
    let half = 0.5 * width;

    // One transformed sample: x = center + half*tanh(pi/2 sinh t). The
    // abscissa is formed as an offset from the near endpoint,
    // 1 - tanh|u| = 2 e^{-2|u|}/(1 + e^{-2|u|}), so endpoint resolution is
    // not lost to the saturation of tanh.
    let sample = |t: f64| -> f64 {
        let u = core::f64::consts::FRAC_PI_2 * libm::sinh(t);
        let e2 = libm::exp(-2.0 * libm::fabs(u));
        let offset = half * 2.0 * e2 / (1.0 + e2);
        if offset == 0.0 {
            return 0.0;
        }
        // x may round onto the endpoint while the offset is still positive;
        // singular integrands use the exact distances, so only an
        // underflowed offset disqualifies the sample.
        let (x, da, db) = if u >= 0.0 {
            (b - offset, width - offset, offset)
        } else {
            (a + offset, offset, width - offset)
        };
        let ch = libm::cosh(u);
        let w = core::f64::consts::FRAC_PI_2 * libm::cosh(t) / (ch * ch);
        let fx = f(x, da, db);
        if fx.is_finite() {
            fx * w
        } else {
            0.0
        }
    };

    let mut h = 1.0;
    let mut sum = sample(0.0);
    {
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            let t = k as f64 * h;
            sum += sample(t) + sample(-t);
            k += 1;
        }
    }
    let mut estimate = sum * h * half;
    let mut last_err = f64::INFINITY;

    for level in 1..=MAX_LEVEL {
        let prev = estimate;
        h *= 0.5;
        // New points at odd multiples of the refined step.
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            let t = k as f64 * h;
            sum += sample(t) + sample(-t);
            k += 2;
        }
        estimate = sum * h * half;
        last_err = (estimate - prev).abs();
        if level >= 3 && last_err <= tol * estimate.abs().max(1.0) {
            return Ok(estimate);
        }
    }
    Err(QuadError::NonConvergent {
        estimate,
        error: last_err,
    })
}

/// Integrates over `[breaks[0], breaks.last()]`, one tanh-sinh pass per
/// subinterval. Breakpoints must be sorted.
pub(crate) fn integrate_piecewise(
    f: impl Fn(f64) -> f64 + Copy,
    breaks: &[f64],
    tol: f64,
) -> Result<f64, QuadError> {
    let mut total = 0.0;
    for w in breaks.windows(2) {
        total += tanh_sinh(f, w[0], w[1], tol)?;
    }
    Ok(total)
}

/// Breakpoint list `start, start+1, ..., end` clipped and with the exact
/// ends attached; used to split spline integrands at their knots.
pub(crate) fn knot_breaks(start: f64, end: f64) -> Vec<f64> {
    let mut breaks = Vec::new();
    breaks.push(start);
    let mut k = libm::floor(start) + 1.0;
    while k < end {
        if k > start {
            breaks.push(k);
        }
        k += 1.0;
    }
    breaks.push(end);
    breaks
}
