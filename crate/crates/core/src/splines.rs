//! Time-domain evaluation of B-splines of integer and real order.
//!
//! Conventions:
//!
//! * `B_1` is the indicator of the right-open interval `[0, 1)`, so the
//!   integer-shift partition of unity holds pointwise everywhere.
//! * The truncated-power sum for fractional orders runs in ascending `k`
//!   with compensated (Kahan) accumulation; terms with `x - k <= 0` are
//!   skipped because they contribute exactly zero.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dd::{gamma_dd, Dd, DD_ONE, DD_ZERO};
use crate::gamma::gamma;
use crate::quad;

/// Order of a spline family member: classical integer order or real order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplineOrder {
    /// Classical polynomial B-spline order `n >= 1`.
    Integer(u32),
    /// Fractional order. `alpha > 1` for `B_alpha`; the fractional spline
    /// polynomials accept any `alpha > 0`.
    Fractional(f64),
}

impl SplineOrder {
    pub fn integer(n: u32) -> Option<Self> {
        (n >= 1).then_some(SplineOrder::Integer(n))
    }

    pub fn fractional(alpha: f64) -> Option<Self> {
        (alpha > 0.0 && alpha.is_finite()).then_some(SplineOrder::Fractional(alpha))
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            SplineOrder::Integer(n) => n as f64,
            SplineOrder::Fractional(a) => a,
        }
    }
}

/// Samples of a function on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    start: f64,
    step: f64,
    values: GridValues,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridValues {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl GridFunction {
    /// Panics if `step <= 0` or the sample list is empty; flag validation
    /// happens before any grid is built.
    pub fn new(start: f64, step: f64, values: GridValues) -> Self {
        assert!(step > 0.0, "grid step must be positive");
        let len = match &values {
            GridValues::Real(v) => v.len(),
            GridValues::Complex(v) => v.len(),
        };
        assert!(len > 0, "grid needs at least one sample");
        GridFunction {
            start,
            step,
            values,
        }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        match &self.values {
            GridValues::Real(v) => v.len(),
            GridValues::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0 // never true; the constructor rejects empty grids
    }

    /// Abscissa of sample `i`.
    pub fn x(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn values(&self) -> &GridValues {
        &self.values
    }
}

/// Uniform sampling of a real-valued function.
pub fn sample_grid(f: impl Fn(f64) -> f64, start: f64, step: f64, count: usize) -> GridFunction {
    let values = (0..count).map(|i| f(start + step * i as f64)).collect();
    GridFunction::new(start, step, GridValues::Real(values))
}

/// Truncated power `x_+^p`: `x^p` for `x > 0`, zero otherwise (`p > 0`).
pub fn truncated_power(x: f64, p: f64) -> f64 {
    if x > 0.0 {
        libm::pow(x, p)
    } else {
        0.0
    }
}

/// Zeroth truncated power with the right-open convention `[x >= 0]`; only
/// the order-1 explicit formula needs it.
fn step_indicator(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Evaluation routes for the integer-order B-spline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsplineMethod {
    /// Alternating truncated-power sum.
    Explicit,
    /// Two-term order recursion down to the indicator of `[0, 1)`.
    Recursion,
    /// Adaptive quadrature of the defining convolution integral.
    Convolution,
}

/// Integer-order B-spline `B_n(x)`, `n >= 1`.
///
/// The explicit route cancels catastrophically beyond `n` around 12
/// (terms grow like `binom(n, n/2) (n/2)^{n-1}`); the recursion route is
/// stable at any order.
pub fn bspline_int(n: u32, x: f64, method: BsplineMethod) -> f64 {
    assert!(n >= 1, "B-spline order starts at 1");
    match method {
        BsplineMethod::Explicit => bspline_explicit(n, x),
        BsplineMethod::Recursion => bspline_recursion(n, x),
        BsplineMethod::Convolution => bspline_convolution(n, x),
    }
}

fn bspline_explicit(n: u32, x: f64) -> f64 {
    if x <= 0.0 && !(n == 1 && x == 0.0) {
        return 0.0;
    }
    if x >= n as f64 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut coeff = 1.0f64; // (-1)^k binom(n, k)
    for k in 0..=n {
        if k > 0 {
            coeff *= -((n - k + 1) as f64) / k as f64;
        }
        let xk = x - k as f64;
        let term = if n == 1 {
            // x_+^0 with the right-open convention
            coeff * step_indicator(xk)
        } else {
            coeff * truncated_power(xk, (n - 1) as f64)
        };
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum / gamma(n as f64)
}

// Triangular form of the two-term order recursion: row k holds
// B_k(x - j); positive combinations only, so it stays stable at orders
// where the alternating explicit sum has already cancelled away all
// digits. O(n^2) per evaluation.
fn bspline_recursion(n: u32, x: f64) -> f64 {
    if n == 1 {
        return if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 };
    }
    if x <= 0.0 || x >= n as f64 {
        return 0.0;
    }
    let n = n as usize;
    let mut row = Vec::with_capacity(n);
    for j in 0..n {
        let y = x - j as f64;
        row.push(if (0.0..1.0).contains(&y) { 1.0 } else { 0.0 });
    }
    for k in 2..=n {
        for j in 0..=(n - k) {
            let y = x - j as f64;
            row[j] = (y * row[j] + (k as f64 - y) * row[j + 1]) / (k as f64 - 1.0);
        }
    }
    row[0]
}

fn bspline_convolution(n: u32, x: f64) -> f64 {
    if n == 1 {
        return if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 };
    }
    if x <= 0.0 || x >= n as f64 {
        return 0.0;
    }
    // B_n(x) = int_0^1 B_{n-1}(x - t) dt; the integrand has a knot where
    // x - t crosses an integer, so split there.
    let fx = x - libm::floor(x);
    let mut breaks = Vec::with_capacity(3);
    breaks.push(0.0);
    if fx > 0.0 && fx < 1.0 {
        breaks.push(fx);
    }
    breaks.push(1.0);
    quad::integrate_piecewise(|t| bspline_recursion(n - 1, x - t), &breaks, 1e-12)
        .expect("piecewise-polynomial integrand converges")
}

/// Fractional B-spline `B_alpha(x)` for `alpha > 1`: the alternating
/// truncated-power sum; zero for `x <= 0`.
pub fn bspline_frac(alpha: f64, x: f64) -> f64 {
    assert!(alpha > 1.0, "fractional B-spline needs alpha > 1");
    if x <= 0.0 {
        return 0.0;
    }
    let p = alpha - 1.0;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut coeff = 1.0f64; // (-1)^k binom(alpha, k)
    let mut k = 0u64;
    while (k as f64) < x {
        if k > 0 {
            coeff *= (k as f64 - 1.0 - alpha) / k as f64;
        }
        let term = coeff * libm::pow(x - k as f64, p);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        k += 1;
    }
    sum / gamma(alpha)
}

/// `B_alpha(x)` evaluated in double-double; accurate far into the tail
/// where the alternating sum cancels below the `f64` noise floor.
pub fn bspline_frac_dd(alpha: f64, x: f64) -> f64 {
    assert!(alpha > 1.0);
    if x <= 0.0 {
        return 0.0;
    }
    let p = Dd::two_diff(alpha, 1.0);
    let mut sum = DD_ZERO;
    let mut coeff = DD_ONE;
    let mut k = 0u64;
    while (k as f64) < x {
        if k > 0 {
            coeff = coeff
                .mul(Dd::two_diff(k as f64 - 1.0, alpha))
                .div_f64(k as f64);
        }
        let base = Dd::two_diff(x, k as f64);
        sum = sum.add(coeff.mul(base.pow(p)));
        k += 1;
    }
    sum.div(gamma_dd(Dd::from_f64(alpha))).to_f64()
}

/// Fractional forward difference: sum of `(-1)^k binom(alpha,k) f(x-k)`
/// over `k < terms`. For integer `alpha` the coefficients vanish past
/// `k = alpha` and the sum self-terminates.
pub fn frac_forward_diff(alpha: f64, f: impl Fn(f64) -> f64, x: f64, terms: usize) -> f64 {
    assert!(terms >= 1);
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut coeff = 1.0f64;
    for k in 0..terms {
        if k > 0 {
            coeff *= (k as f64 - 1.0 - alpha) / k as f64;
            if coeff == 0.0 {
                break;
            }
        }
        let term = coeff * f(x - k as f64);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Fractional spline polynomial `S_n^{(alpha)}(x)` for `alpha > 0`:
/// `1/Gamma(alpha+n+1) * sum_k (-1)^k binom(alpha+1, k) (x-k)_+^{alpha+n}`;
/// zero for `x <= 0`.
pub fn frac_spline_poly(n: u32, alpha: f64, x: f64) -> f64 {
    assert!(alpha > 0.0);
    if x <= 0.0 {
        return 0.0;
    }
    let p = alpha + n as f64;
    let a1 = alpha + 1.0;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut coeff = 1.0f64; // (-1)^k binom(alpha+1, k)
    let mut k = 0u64;
    while (k as f64) < x {
        if k > 0 {
            coeff *= (k as f64 - 1.0 - a1) / k as f64;
        }
        let term = coeff * libm::pow(x - k as f64, p);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        k += 1;
    }
    sum / gamma(p + 1.0)
}

/// Dirac-source coefficients of the fractional differential equation for
/// `B_alpha`: `a_k = (-1)^k binom(alpha, k)`, `k < terms`.
pub fn de_source_coeffs(alpha: f64, terms: usize) -> Vec<f64> {
    assert!(terms >= 1);
    let mut out = Vec::with_capacity(terms);
    let mut coeff = 1.0f64;
    for k in 0..terms {
        if k > 0 {
            coeff *= (k as f64 - 1.0 - alpha) / k as f64;
        }
        out.push(coeff);
    }
    out
}

/// Integer-shift sum `sum_{k=-K..K} B_n(x - k)` for integer order.
pub fn partition_sum_int(n: u32, x: f64, k_max: i64) -> f64 {
    let mut sum = 0.0;
    for k in -k_max..=k_max {
        sum += bspline_int(n, x - k as f64, BsplineMethod::Explicit);
    }
    sum
}

/// Direct `f64` partition sum `sum_{j=0..=K} B_alpha(x + j)` for
/// `x` in `[0, 1)` (shifts with `k >= 1` vanish there).
pub fn partition_sum_direct(alpha: f64, x: f64, k_max: usize) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for j in 0..=k_max {
        let term = bspline_frac(alpha, x + j as f64);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Partition-of-unity residual `sum_{k=-K..K} B_alpha(x-k) - 1` for
/// `x` in `[0, 1)`, in double-double.
///
/// Interchanging the two finite sums collapses the inner binomials to a
/// partial row sum, giving the exact rearrangement
/// `sum_{j=0..K} B_alpha(x+j)
///    = 1/Gamma(alpha) * sum_{r=0..K} (-1)^r binom(alpha-1, r) (x+K-r)^{alpha-1}`,
/// which is both O(K) and free of the nested cancellation.
pub fn partition_of_unity_residual(alpha: f64, x: f64, k_max: usize) -> f64 {
    assert!(alpha > 1.0);
    assert!((0.0..1.0).contains(&x));
    let p = Dd::two_diff(alpha, 1.0);
    let mut sum = DD_ZERO;
    let mut coeff = DD_ONE; // (-1)^r binom(alpha-1, r)
    for r in 0..=k_max {
        if r > 0 {
            coeff = coeff.mul(Dd::two_diff(r as f64, alpha)).div_f64(r as f64);
        }
        let base = Dd::exact_sum(x, (k_max - r) as f64);
        sum = sum.add(coeff.mul(base.pow(p)));
    }
    sum.div(gamma_dd(Dd::from_f64(alpha))).sub(DD_ONE).to_f64()
}
