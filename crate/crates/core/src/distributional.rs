//! Delta-expansion coefficient algebra and weak-form checks.
//!
//! The Fourier-side expansion of `B_alpha(t - x)` has Maclaurin
//! coefficients `c_n(x)` in the variable `-i omega`; under `u = -i omega`
//! they are the real numbers `c_n = [u^n] ((e^u - 1)/u)^alpha e^{xu}`. The
//! full distributional operators are not modelled; everything here is
//! finite coefficient algebra, pairings against explicitly differentiable
//! test functions, and numeric fractional integration, which together carry
//! every verifiable consequence of the operator statements.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::combin::shifted_symbol_series;
use crate::gamma::gamma;
use crate::quad::{self, QuadError};
use crate::rational::Rational;
use crate::series::TruncatedSeries;
use crate::splines::{bspline_frac, truncated_power};

#[derive(Debug, Clone, PartialEq)]
pub enum DistributionalError {
    /// The test function does not carry enough derivatives at 0.
    NotEnoughDerivatives { needed: usize, available: usize },
}

impl fmt::Display for DistributionalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionalError::NotEnoughDerivatives { needed, available } => write!(
                f,
                "pairing needs {needed} derivatives at 0 but only {available} are tabulated"
            ),
        }
    }
}

impl core::error::Error for DistributionalError {}

/// Coefficients of a delta-derivative expansion
/// `sum_n coeffs[n] * delta^{(n)}(t - center)` attached to `B_alpha(. - x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaExpansion {
    pub alpha: f64,
    /// Shift of the spline the coefficients were derived for.
    pub x: f64,
    pub coeffs: Vec<Complex64>,
    /// 0 for an expansion over `delta^{(n)}(t)`, `x` for the shifted basis.
    pub center: f64,
    pub reflected: bool,
}

impl DeltaExpansion {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// The coefficients `c_n(x) = S_alpha^{n+alpha}(x;1,e;1)/(binom(n+alpha,n) n!)`
/// for `n = 0..=order`, equal to the `(-i omega)^n`-coefficients of
/// `B^_alpha(omega) e^{-i omega x}`.
///
/// Integer orders run through the exact rational engine (the shift `x` is a
/// dyadic rational, hence exact); fractional orders through the real-power
/// series.
pub fn delta_coeffs(alpha: f64, x: f64, order: usize) -> DeltaExpansion {
    let coeffs = delta_coeffs_real(alpha, x, order)
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();
    DeltaExpansion {
        alpha,
        x,
        coeffs,
        center: 0.0,
        reflected: false,
    }
}

pub(crate) fn delta_coeffs_real(alpha: f64, x: f64, order: usize) -> Vec<f64> {
    if libm::floor(alpha) == alpha && alpha >= 0.0 && alpha <= u32::MAX as f64 {
        if let Some(xr) = Rational::from_f64_exact(x) {
            let base = crate::series::expm1_over_t(order);
            let shift = TruncatedSeries::exp_linear(xr, order);
            let series = base.pow(alpha as u64).mul(&shift);
            return series.coeffs().iter().map(|c| c.to_f64()).collect();
        }
    }
    shifted_symbol_series(alpha, x, order).coeffs().to_vec()
}

/// Re-centers an expansion over `delta^{(n)}(t)` onto the shifted basis
/// `delta^{(m)}(t - x)`:
/// `d_m(x) = sum_{n=0..m} c_n (-1)^n x^{m-n}/(m-n)!`.
///
/// If `order` exceeds the input length the convolution is truncated to the
/// available coefficients.
pub fn shifted_coeffs(c: &DeltaExpansion, x: f64, order: usize) -> DeltaExpansion {
    debug_assert_eq!(c.center, 0.0, "input expansion must be centered at 0");
    let mut out = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut acc = Complex64::new(0.0, 0.0);
        // x^{m-n}/(m-n)! built from the n = m end downwards
        let mut poly = 1.0f64;
        for n in (0..=m.min(c.coeffs.len().saturating_sub(1))).rev() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            acc += c.coeffs[n] * sign * poly;
            let k = (m - n + 1) as f64;
            poly = poly * x / k;
        }
        out.push(acc);
    }
    DeltaExpansion {
        alpha: c.alpha,
        x: c.x,
        coeffs: out,
        center: x,
        reflected: c.reflected,
    }
}

/// A test function with explicitly tabulated derivatives at the origin; no
/// numerical differentiation happens anywhere.
pub struct TestFunction {
    evaluator: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    derivatives_at_zero: Vec<f64>,
}

impl TestFunction {
    pub fn new(
        evaluator: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivatives_at_zero: Vec<f64>,
    ) -> Self {
        TestFunction {
            evaluator: Box::new(evaluator),
            derivatives_at_zero,
        }
    }

    /// `e^{-x^2}` with derivatives from the Hermite recurrence.
    pub fn gaussian(orders: usize) -> Self {
        Self::gaussian_with_linear(1.0, 0.0, orders)
    }

    /// `(a0 + a1 x) e^{-x^2}`; the linear factor breaks even symmetry,
    /// which the sign conventions of the pairing are sensitive to.
    pub fn gaussian_with_linear(a0: f64, a1: f64, orders: usize) -> Self {
        // g^{(n)}(0) for g = e^{-x^2}: (-1)^n H_n(0), H_{n+1}(0) = -2n H_{n-1}(0)
        let mut h = Vec::with_capacity(orders + 2);
        h.push(1.0f64);
        h.push(0.0f64);
        for n in 1..=orders {
            h.push(-2.0 * n as f64 * h[n - 1]);
        }
        let g_deriv: Vec<f64> = (0..=orders + 1)
            .map(|n| if n % 2 == 0 { h[n] } else { 0.0 })
            .collect();
        let derivs = (0..=orders)
            .map(|n| {
                // Leibniz: (x g)^{(n)}(0) = n g^{(n-1)}(0)
                let from_linear = if n == 0 {
                    0.0
                } else {
                    n as f64 * g_deriv[n - 1]
                };
                a0 * g_deriv[n] + a1 * from_linear
            })
            .collect();
        TestFunction::new(move |x| (a0 + a1 * x) * libm::exp(-x * x), derivs)
    }

    /// Schwartz-type window that is flat at the origin: every derivative
    /// vanishes there, so all pairings against delta derivatives are zero.
    pub fn flat_at_zero_window(orders: usize) -> Self {
        TestFunction::new(
            |x| {
                if x == 0.0 {
                    0.0
                } else {
                    libm::exp(-x * x - 1.0 / (x * x))
                }
            },
            alloc::vec![0.0; orders + 1],
        )
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.evaluator)(x)
    }

    pub fn derivatives_at_zero(&self) -> &[f64] {
        &self.derivatives_at_zero
    }
}

/// `sum_{n=0..=order} a0[n] phi^{(n)}(0)`.
pub fn pair_with_test(
    a0: &[f64],
    phi: &TestFunction,
    order: usize,
) -> Result<f64, DistributionalError> {
    let needed = order + 1;
    if phi.derivatives_at_zero.len() < needed || a0.len() < needed {
        return Err(DistributionalError::NotEnoughDerivatives {
            needed,
            available: phi.derivatives_at_zero.len().min(a0.len()),
        });
    }
    let acc = a0
        .iter()
        .zip(&phi.derivatives_at_zero)
        .take(order + 1)
        .map(|(a, d)| a * d)
        .sum();
    Ok(acc)
}

/// Which branch of the `(-1)^alpha` prefactor is under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingBranch {
    /// `(-1)^alpha := e^{+i pi alpha}`
    PlusIPi,
    /// `(-1)^alpha := e^{-i pi alpha}`
    MinusIPi,
}

impl PairingBranch {
    pub fn prefactor(&self, alpha: f64) -> Complex64 {
        if libm::floor(alpha) == alpha {
            // both branches collapse to the exact sign
            let sign = if (alpha as i64) % 2 == 0 { 1.0 } else { -1.0 };
            return Complex64::new(sign, 0.0);
        }
        let theta = match self {
            PairingBranch::PlusIPi => core::f64::consts::PI * alpha,
            PairingBranch::MinusIPi => -core::f64::consts::PI * alpha,
        };
        Complex64::new(libm::cos(theta), libm::sin(theta))
    }
}

/// Left side and partial sums of the pairing identity
/// `int B_alpha(-x) phi(x) dx  vs  sum_n a_n(0) phi^{(n)}(0)`
/// with `a_n(0) = (-1)^alpha c_n(0)` under the chosen branch.
///
/// The partial-sum behaviour is returned, not asserted: the series carries
/// no convergence statement, so the caller logs it.
#[derive(Debug, Clone)]
pub struct PairingResidual {
    /// `int_0^window B_alpha(u) phi(-u) du` by knot-split quadrature.
    pub lhs: f64,
    /// Partial sums `S_N = prefactor * sum_{n<=N} c_n(0) phi^{(n)}(0)`.
    pub partial_sums: Vec<Complex64>,
}

pub fn pairing_residual(
    alpha: f64,
    phi: &TestFunction,
    order: usize,
    window: f64,
    branch: PairingBranch,
) -> Result<PairingResidual, QuadError> {
    assert!(alpha > 1.0);
    assert!(window > 0.0);
    // int B_alpha(-x) phi(x) dx = int_0^inf B_alpha(u) phi(-u) du
    let breaks = quad::knot_breaks(0.0, window);
    let lhs = quad::integrate_piecewise(|u| bspline_frac(alpha, u) * phi.eval(-u), &breaks, 1e-12)?;

    let c = delta_coeffs_real(alpha, 0.0, order);
    let prefactor = branch.prefactor(alpha);
    let mut partial_sums = Vec::with_capacity(order + 1);
    let mut acc = 0.0;
    for (n, cn) in c.iter().enumerate().take(order + 1) {
        let d = phi.derivatives_at_zero.get(n).copied().unwrap_or(0.0);
        acc += cn * d;
        partial_sums.push(prefactor * acc);
    }
    Ok(PairingResidual { lhs, partial_sums })
}

/// The convolution kernel `K_alpha(x) = x_+^{alpha-1}/Gamma(alpha)`.
pub fn kernel_kalpha(alpha: f64, x: f64) -> f64 {
    assert!(alpha > 0.0);
    truncated_power(x, alpha - 1.0) / gamma(alpha)
}

/// Riemann-Liouville fractional integral `(f * K_alpha)(x)` for `f`
/// supported on `[0, inf)`:
/// `1/Gamma(alpha) int_0^x f(t) (x-t)^{alpha-1} dt`.
///
/// Tanh-sinh quadrature absorbs the endpoint singularity at `t = x` (and
/// any integrable one of `f` at 0, e.g. `f = K_beta` with `beta < 1`). The
/// singular kernel factor is fed the quadrature's exact endpoint distance
/// so no near-endpoint mass is lost to rounding.
pub fn fractional_integral(
    alpha: f64,
    f: impl Fn(f64) -> f64,
    x: f64,
    tol: f64,
) -> Result<f64, QuadError> {
    assert!(alpha > 0.0);
    assert!(x >= 0.0);
    if x == 0.0 {
        return Ok(0.0);
    }
    let g = gamma(alpha);
    let p = alpha - 1.0;
    quad::tanh_sinh_with_distances(|t, _da, db| f(t) * libm::pow(db, p) / g, 0.0, x, tol)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen references keep their full digits
mod tests {
    use super::*;

    #[test]
    fn kernel_values() {
        assert_eq!(kernel_kalpha(1.0, 3.0), 1.0);
        assert_eq!(kernel_kalpha(1.0, -0.5), 0.0);
        assert_eq!(kernel_kalpha(1.0, 0.0), 0.0);
        assert_eq!(kernel_kalpha(2.0, 3.0), 3.0);
        // K_{1/2}(4) = 1/(2 sqrt(pi))
        let expect = 0.5 / core::f64::consts::PI.sqrt();
        assert!((kernel_kalpha(0.5, 4.0) - expect).abs() < 1e-15);
    }

    #[test]
    fn delta_coeffs_integer_order_is_exact_series() {
        // alpha = 2, x = 0: coefficients of ((e^u-1)/u)^2 are
        // (2^{n+2} - 2)/(n+2)!
        let exp = delta_coeffs(2.0, 0.0, 8);
        let mut fact = 2.0f64; // (n+2)! starting at n=0
        for n in 0..=8usize {
            let expect = (libm::pow(2.0, n as f64 + 2.0) - 2.0) / fact;
            assert!(
                (exp.coeffs[n].re - expect).abs() < 1e-15 * expect.abs(),
                "n={n}"
            );
            assert_eq!(exp.coeffs[n].im, 0.0);
            fact *= n as f64 + 3.0;
        }
        assert_eq!(exp.center, 0.0);
    }

    #[test]
    fn delta_coeffs_shift_factor() {
        // alpha = 2, x = 1: coefficients of symbol * e^{u}; cross-check
        // against the exact series product
        let exp = delta_coeffs(2.0, 1.0, 10);
        let base = crate::series::expm1_over_t(10).pow(2);
        let shift = TruncatedSeries::exp_linear(Rational::one(), 10);
        let series = base.mul(&shift);
        for n in 0..=10usize {
            let expect = series.coeff(n).unwrap().to_f64();
            assert!((exp.coeffs[n].re - expect).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn delta_coeffs_fractional_c0() {
        // c_0 = 1 for every order at x = 0
        let exp = delta_coeffs(2.5, 0.0, 4);
        assert!((exp.coeffs[0].re - 1.0).abs() < 1e-14);
        // frozen leading coefficients of ((e^u-1)/u)^{5/2}:
        // 1, 5/4, 85/96, 0.45572916..., 0.18766276...
        let expect = [
            1.0,
            1.25,
            0.8854166666666667,
            0.4557291666666667,
            0.18766276041666666,
        ];
        for (n, e) in expect.iter().enumerate() {
            assert!((exp.coeffs[n].re - e).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn shifted_coeffs_signed_identity_at_zero() {
        let c = delta_coeffs(2.5, 0.0, 8);
        let d = shifted_coeffs(&c, 0.0, 8);
        for m in 0..=8usize {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(d.coeffs[m], c.coeffs[m] * sign, "m={m}");
        }
        assert_eq!(d.center, 0.0);
        // d_0(x) = c_0 regardless of x
        let d = shifted_coeffs(&c, 0.7, 5);
        assert_eq!(d.coeffs[0], c.coeffs[0]);
        assert_eq!(d.center, 0.7);
    }

    #[test]
    fn shifted_coeffs_matches_bruteforce() {
        // reverse-order double loop as an independent oracle
        let c = delta_coeffs(2.5, 0.3, 8);
        let x = 0.7;
        let d = shifted_coeffs(&c, x, 8);
        for m in (0..=8usize).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in (0..=m).rev() {
                let mut fact = 1.0;
                for j in 2..=(m - n) {
                    fact *= j as f64;
                }
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                acc += c.coeffs[n] * sign * libm::pow(x, (m - n) as f64) / fact;
            }
            assert!((d.coeffs[m] - acc).norm() < 1e-14, "m={m}");
        }
    }

    #[test]
    fn pairing_linear_and_window() {
        let phi = TestFunction::gaussian(8);
        assert!((phi.eval(0.0) - 1.0).abs() < 1e-15);
        // a = (1,0,0,...) -> phi(0) = 1
        let mut a = vec![0.0; 9];
        a[0] = 1.0;
        assert!((pair_with_test(&a, &phi, 8).unwrap() - 1.0).abs() < 1e-15);
        // a = (0,0,1) -> phi''(0) = -2
        let a = vec![0.0, 0.0, 1.0];
        assert!((pair_with_test(&a, &phi, 2).unwrap() - -2.0).abs() < 1e-15);
        // flat window pairs to zero against anything
        let w = TestFunction::flat_at_zero_window(8);
        let a = vec![1.0, -2.0, 0.5, 3.0];
        assert_eq!(pair_with_test(&a, &w, 3).unwrap(), 0.0);
        // missing derivatives are an error
        assert!(matches!(
            pair_with_test(&a, &phi, 12),
            Err(DistributionalError::NotEnoughDerivatives { .. })
        ));
    }

    #[test]
    fn pairing_lhs_against_piecewise_exact_oracle() {
        // int B_2(u) e^{-u^2} du via erf/exp closed forms:
        //   int_0^1 u e^{-u^2} du + int_1^2 (2-u) e^{-u^2} du
        let phi = TestFunction::gaussian(16);
        let r = pairing_residual(2.0, &phi, 16, 10.0, PairingBranch::PlusIPi).unwrap();
        let sqrt_pi = core::f64::consts::PI.sqrt();
        // int_0^1 u e^{-u^2} du = (1 - e^{-1})/2
        // int_1^2 (2-u) e^{-u^2} du = sqrt(pi)(erf 2 - erf 1) + (e^{-4} - e^{-1})/2
        let exact = (1.0 - libm::exp(-1.0)) / 2.0
            + sqrt_pi * (libm::erf(2.0) - libm::erf(1.0))
            + (libm::exp(-4.0) - libm::exp(-1.0)) / 2.0;
        assert!((r.lhs - exact).abs() < 1e-10, "lhs={} exact={exact}", r.lhs);
        assert!((r.lhs - 0.41179289417291408).abs() < 1e-10);
        // N = 0 partial sum is a_0(0) phi(0) = (+1) * c_0 * 1 = 1
        assert!((r.partial_sums[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn fractional_integral_polynomials() {
        // alpha = 1, f = 1: plain antiderivative x
        let v = fractional_integral(1.0, |_| 1.0, 2.5, 1e-12).unwrap();
        assert!((v - 2.5).abs() < 1e-10);
        // alpha = 2, f = 1: x^2/2
        let v = fractional_integral(2.0, |_| 1.0, 3.0, 1e-12).unwrap();
        assert!((v - 4.5).abs() < 1e-9);
    }

    #[test]
    fn fractional_integral_beta_identity() {
        // K_alpha * K_beta = K_{alpha+beta}
        for &(a, b, x) in &[(0.5f64, 0.5f64, 1.0f64), (0.7, 2.0, 3.0), (1.0, 1.3, 0.5)] {
            let v = fractional_integral(a, |t| kernel_kalpha(b, t), x, 1e-12).unwrap();
            let expect = kernel_kalpha(a + b, x);
            assert!(
                (v - expect).abs() < 1e-8,
                "a={a} b={b} x={x}: {v} vs {expect}"
            );
        }
        // frozen value: K_2.7(3) = 3^{1.7}/Gamma(2.7)
        assert!((kernel_kalpha(2.7, 3.0) - 4.190501167154390).abs() < 1e-12);
    }
}
