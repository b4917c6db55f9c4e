//! Frequency-domain side: closed-form Fourier symbols of the B-splines,
//! partial-sum checks of their generating functions, DFT cross-validation
//! against the time-domain evaluation, and the n-fold Fourier action on
//! delta-expansion coefficients.
//!
//! Branch convention: the fractional power of the symbol base
//! `(1 - e^{-i w})/(i w)` is taken on the principal branch. On `(-2pi, 2pi)`
//! the base factors as `e^{-i w/2} * sinc(w/2)` with a positive real factor,
//! so the principal power is `sinc(w/2)^alpha * e^{-i alpha w/2}` -
//! continuous, equal to 1 at `w = 0`, and agreeing with the integer-order
//! symbol at integer `alpha`.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::splines::bspline_frac;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    /// The series-representation identity only converges where
    /// `|1 - e^{-i w}| < 1`.
    OutsideConvergenceRegion { ratio: f64 },
    /// The DFT window does not cover the spline's effective support.
    InsufficientSupport { tail: f64 },
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::OutsideConvergenceRegion { ratio } => write!(
                f,
                "series representation diverges here: |1 - e^(-iw)| = {ratio} >= 1"
            ),
            SpectralError::InsufficientSupport { tail } => write!(
                f,
                "window too short for the spline tail (max tail sample {tail:e})"
            ),
        }
    }
}

impl core::error::Error for SpectralError {}

/// Threshold below which the symbol base switches to its Taylor expansion
/// to avoid the `1 - e^{-i w}` cancellation.
const NEAR_ZERO_OMEGA: f64 = 1e-6;

fn cis(theta: f64) -> Complex64 {
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// `sin(u)/u`, stable through zero.
fn sinc(u: f64) -> f64 {
    if libm::fabs(u) < NEAR_ZERO_OMEGA {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        libm::sin(u) / u
    }
}

/// The symbol base `(1 - e^{-i w})/(i w)`, with a 4-term Taylor fallback
/// near `w = 0`.
pub fn symbol_base(omega: f64) -> Complex64 {
    if libm::fabs(omega) < NEAR_ZERO_OMEGA {
        // 1 - (iw)/2 + (iw)^2/6 - (iw)^3/24 + (iw)^4/120
        let iw = Complex64::new(0.0, omega);
        let mut acc = Complex64::new(1.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for n in 1..=4 {
            term = -term * iw / (n as f64 + 1.0);
            acc += term;
        }
        return acc;
    }
    (Complex64::new(1.0, 0.0) - cis(-omega)) / Complex64::new(0.0, omega)
}

/// Fourier transform of the integer-order B-spline:
/// `((1 - e^{-i w})/(i w))^n`, with the removable singularity at 0 filled.
pub fn fourier_symbol_int(n: u32, omega: f64) -> Complex64 {
    symbol_base(omega).powi(n as i32)
}

/// Fourier symbol of the fractional B-spline, principal branch.
pub fn fourier_symbol_frac(alpha: f64, omega: f64) -> Complex64 {
    let half = 0.5 * omega;
    if libm::fabs(omega) <= 2.0 * core::f64::consts::PI {
        // e^{-iw/2} sinc(w/2) factorization; the real factor is >= 0 here.
        let r = sinc(half);
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let modulus = libm::exp(alpha * libm::log(r));
        modulus * cis(-alpha * half)
    } else {
        symbol_base(omega).powf(alpha)
    }
}

/// Closed-form symbol of the fractional B-spline of a fixed order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierSymbol {
    pub alpha: f64,
}

impl FourierSymbol {
    pub fn new(alpha: f64) -> Self {
        FourierSymbol { alpha }
    }

    pub fn eval(&self, omega: f64) -> Complex64 {
        fourier_symbol_frac(self.alpha, omega)
    }
}

/// Partial sum and closed form of the forward-difference symbol
/// `sum_k (-1)^k binom(alpha,k) e^{-ikw} -> (1 - e^{-iw})^alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NablaSymbol {
    pub partial: Complex64,
    pub closed: Complex64,
}

pub fn nabla_symbol(alpha: f64, omega: f64, terms: usize) -> NablaSymbol {
    assert!(terms >= 1);
    let rot = cis(-omega);
    let mut phase = Complex64::new(1.0, 0.0);
    let mut coeff = 1.0f64;
    let mut partial = Complex64::new(0.0, 0.0);
    for k in 0..terms {
        if k > 0 {
            coeff *= (k as f64 - 1.0 - alpha) / k as f64;
            phase *= rot;
            if coeff == 0.0 {
                break;
            }
        }
        partial += coeff * phase;
    }
    let closed = (Complex64::new(1.0, 0.0) - rot).powf(alpha);
    NablaSymbol { partial, closed }
}

/// Partial sum vs closed form of the exponential generating function of
/// the integer symbols: `sum_n B^_n(w) t^n/n!  vs  e^{t (1-e^{-iw})/(iw)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GfCheck {
    pub partial: Complex64,
    pub closed: Complex64,
}

pub fn gf_bn_hat(omega: f64, t: Complex64, terms: usize) -> GfCheck {
    assert!(terms >= 1);
    let base = symbol_base(omega);
    let mut term = Complex64::new(1.0, 0.0);
    let mut partial = term;
    for n in 1..terms {
        term = term * base * t / n as f64;
        partial += term;
    }
    GfCheck {
        partial,
        closed: (t * base).exp(),
    }
}

/// Both sides of the series representation
/// `sum_n (iw)^n B^_n(w) = cos w + i sin w`, with its geometric tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRepCheck {
    pub partial: Complex64,
    pub closed: Complex64,
    /// `|1-e^{-iw}|^N / (1 - |1-e^{-iw}|)`.
    pub tail_bound: f64,
}

/// Errors when `|1 - e^{-i w}| >= 1`: the identity is stated without a
/// region, but the geometric argument needs one, so out-of-region points
/// are reported instead of asserted.
pub fn series_rep_check(omega: f64, terms: usize) -> Result<SeriesRepCheck, SpectralError> {
    assert!(terms >= 1);
    let ratio = (Complex64::new(1.0, 0.0) - cis(-omega)).norm();
    if ratio >= 1.0 {
        return Err(SpectralError::OutsideConvergenceRegion { ratio });
    }
    let iw = Complex64::new(0.0, omega);
    let mut iw_pow = Complex64::new(1.0, 0.0);
    let mut partial = Complex64::new(0.0, 0.0);
    for n in 0..terms {
        if n > 0 {
            iw_pow *= iw;
        }
        partial += iw_pow * fourier_symbol_int(n as u32, omega);
    }
    Ok(SeriesRepCheck {
        partial,
        closed: cis(omega),
        tail_bound: libm::pow(ratio, terms as f64) / (1.0 - ratio),
    })
}

/// Outcome of the time/frequency cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DftCrosscheck {
    /// Max over checked bins of |DFT sample - closed-form symbol|.
    pub max_deviation: f64,
    /// Number of frequency bins compared (`0..=M/8`).
    pub bins: usize,
    pub step: f64,
    /// Largest |B_alpha| sample in the last tenth of the window.
    pub tail: f64,
}

/// Samples `B_alpha` on `[0, length)` with `samples` points, forms the
/// rectangle-rule DFT, and compares it with the closed-form symbol at the
/// grid frequencies `w_j = 2 pi j / length` for `w_j <= pi/(4 step)`.
///
/// The rectangle rule is the DFT of the samples, so the reported deviation
/// bounds discretization plus tail truncation.
pub fn dft_crosscheck(
    alpha: f64,
    length: usize,
    samples: usize,
) -> Result<DftCrosscheck, SpectralError> {
    assert!(length >= 2 && samples >= 16 && samples.is_multiple_of(2));
    let step = length as f64 / samples as f64;
    let values: Vec<f64> = (0..samples)
        .map(|m| bspline_frac(alpha, m as f64 * step))
        .collect();

    // Window gate: the last tenth of the window must be deep into the
    // spline's tail. The bound protects the loosest comparison tolerance
    // (1e-3) with two orders of margin; `B_2.5` on a length-64 window sits
    // near 2e-8 and must pass.
    let tail = values[samples - samples / 10..]
        .iter()
        .fold(0.0f64, |acc, v| acc.max(libm::fabs(*v)));
    if tail >= 1e-6 {
        return Err(SpectralError::InsufficientSupport { tail });
    }

    let mut max_dev = 0.0f64;
    let bins = samples / 8;
    for j in 0..=bins {
        let rot = cis(-2.0 * core::f64::consts::PI * j as f64 / samples as f64);
        let mut phase = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for &v in &values {
            acc += v * phase;
            phase *= rot;
        }
        let dft = acc * step;
        let omega = 2.0 * core::f64::consts::PI * j as f64 / length as f64;
        let dev = (dft - fourier_symbol_frac(alpha, omega)).norm();
        max_dev = max_dev.max(dev);
    }
    Ok(DftCrosscheck {
        max_deviation: max_dev,
        bins: bins + 1,
        step,
        tail,
    })
}

/// Result of applying the Fourier transform `n` times to a coefficient
/// list over the delta-derivative basis: per-index phase `i^{nm}`, scale
/// `(2 pi)^{floor(n/2)}`, and a reflection flag for `n = 2, 3 (mod 4)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NFoldFourier {
    folds: u32,
    pub scale: f64,
    pub reflected: bool,
    pub coeffs: Vec<Complex64>,
}

/// Exact unit value `i^p`.
fn i_pow(p: u32) -> Complex64 {
    match p % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

pub fn nfold_fourier_coeffs(c: &[Complex64], n: u32) -> NFoldFourier {
    let coeffs = c
        .iter()
        .enumerate()
        .map(|(m, cm)| cm * i_pow((n as u64 * m as u64 % 4) as u32))
        .collect();
    NFoldFourier {
        folds: n,
        scale: libm::pow(2.0 * core::f64::consts::PI, (n / 2) as f64),
        reflected: matches!(n % 4, 2 | 3),
        coeffs,
    }
}

impl NFoldFourier {
    /// Applies `more` further transforms; composition satisfies
    /// `T_a then T_b = T_{a+b}`.
    pub fn then(&self, more: u32) -> NFoldFourier {
        let total = self.folds + more;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, cm)| cm * i_pow((more as u64 * m as u64 % 4) as u32))
            .collect();
        NFoldFourier {
            folds: total,
            scale: libm::pow(2.0 * core::f64::consts::PI, (total / 2) as f64),
            reflected: matches!(total % 4, 2 | 3),
            coeffs,
        }
    }

    pub fn folds(&self) -> u32 {
        self.folds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_symbol_values() {
        for n in 1..=5 {
            let v = fourier_symbol_int(n, 0.0);
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        // (1 - e^{-i pi})/(i pi) = 2/(i pi) = -2i/pi
        let v = fourier_symbol_int(1, core::f64::consts::PI);
        let expect = Complex64::new(0.0, -2.0 / core::f64::consts::PI);
        assert!((v - expect).norm() < 1e-15);
    }

    #[test]
    fn integer_symbol_modulus() {
        // |B^_n(w)| = |2 sin(w/2)/w|^n
        let mut w = -9.7f64;
        while w < 10.0 {
            if w.abs() > 1e-3 {
                for n in 1..=4 {
                    let v = fourier_symbol_int(n, w).norm();
                    let expect = (2.0 * (w / 2.0).sin() / w).abs().powi(n as i32);
                    assert!((v - expect).abs() < 1e-13, "n={n} w={w}");
                }
            }
            w += 0.83;
        }
    }

    #[test]
    fn fractional_symbol_reduces_to_integer() {
        let mut w = -7.0f64;
        while w < 7.0 {
            let f = fourier_symbol_frac(2.0, w);
            let i = fourier_symbol_int(2, w);
            assert!((f - i).norm() < 1e-12, "w={w}: {f} vs {i}");
            w += 0.37;
        }
    }

    #[test]
    fn fractional_symbol_reference_values() {
        // 30-digit references for the principal branch
        let v = fourier_symbol_frac(2.5, 1.0);
        let expect = Complex64::new(0.2838786118301881, -0.8543524612224126);
        assert!((v - expect).norm() < 1e-14, "{v}");
        // outside (-2pi, 2pi): principal complex log route
        let v = fourier_symbol_frac(2.5, 7.0);
        let expect = Complex64::new(0.0019866213442707, -0.0024830882381103);
        assert!((v - expect).norm() < 1e-13, "{v}");
        let v = fourier_symbol_frac(core::f64::consts::PI, 3.3);
        let expect = Complex64::new(0.0932216539062037, 0.1829577972968807);
        assert!((v - expect).norm() < 1e-13, "{v}");
    }

    #[test]
    fn fractional_symbol_zeros_and_symmetry() {
        // the double nearest 2 pi k is not exactly 2 pi k, so the symbol is
        // merely astronomically small there
        for k in [1i32, -1] {
            let w = 2.0 * core::f64::consts::PI * k as f64;
            assert!(fourier_symbol_frac(2.5, w).norm() < 1e-30);
        }
        // conjugate symmetry for real alpha
        for &alpha in &[1.5, 2.0, core::f64::consts::PI] {
            let mut w = 0.1f64;
            while w < 13.0 {
                let plus = fourier_symbol_frac(alpha, w);
                let minus = fourier_symbol_frac(alpha, -w);
                assert!((minus - plus.conj()).norm() < 1e-13, "alpha={alpha} w={w}");
                w += 0.71;
            }
        }
    }

    #[test]
    fn symbol_continuity_at_seams() {
        // across 0 (Taylor handoff) and across +-pi
        for &w0 in &[
            0.0,
            NEAR_ZERO_OMEGA,
            core::f64::consts::PI,
            -core::f64::consts::PI,
        ] {
            let d = 1e-9;
            let left = fourier_symbol_frac(2.5, w0 - d);
            let right = fourier_symbol_frac(2.5, w0 + d);
            assert!((left - right).norm() < 1e-8, "w0={w0}");
        }
        let sym = FourierSymbol::new(2.5);
        assert!((sym.eval(0.0) - Complex64::new(1.0, 0.0)).norm() == 0.0);
    }

    #[test]
    fn nabla_symbol_small_orders() {
        // alpha = 1, K = 2: exactly 1 - e^{-iw}
        let n = nabla_symbol(1.0, 0.9, 2);
        assert!((n.partial - n.closed).norm() < 1e-15);
        // w = 0: closed form is 0^alpha = 0; partial sums shrink like K^{-alpha}
        let n = nabla_symbol(1.5, 0.0, 10_000);
        assert_eq!(n.closed, Complex64::new(0.0, 0.0));
        assert!(n.partial.norm() < 1e-5, "{}", n.partial);
    }

    #[test]
    fn nabla_symbol_converges() {
        let n = nabla_symbol(2.5, 1.0, 10_000);
        assert!((n.partial - n.closed).norm() < 5e-9, "{:?}", n);
    }

    #[test]
    fn gf_partial_sums_match_exponential() {
        // t = 0: both sides 1
        let g = gf_bn_hat(0.7, Complex64::new(0.0, 0.0), 10);
        assert!((g.partial - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((g.closed - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        // w = 0: closed form collapses to e^t
        let g = gf_bn_hat(0.0, Complex64::new(2.0, 0.0), 50);
        assert!((g.closed.re - libm::exp(2.0)).abs() < 1e-12);
        // entire function: fast agreement
        let g = gf_bn_hat(1.0, Complex64::new(2.0, 0.0), 50);
        assert!((g.partial - g.closed).norm() < 1e-12, "{g:?}");
    }

    #[test]
    fn series_representation_inside_region() {
        let c = series_rep_check(0.0, 5).unwrap();
        assert!((c.partial - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let c = series_rep_check(0.5, 60).unwrap();
        assert!((c.partial - c.closed).norm() < 1e-10);
        assert!(c.tail_bound < 1e-10);

        let c = series_rep_check(0.9, 200).unwrap();
        assert!((c.partial - c.closed).norm() < 1e-10);
    }

    #[test]
    fn series_representation_reports_divergence() {
        // |1 - e^{-2i}| = 2 sin 1 > 1
        match series_rep_check(2.0, 50) {
            Err(SpectralError::OutsideConvergenceRegion { ratio }) => {
                assert!((ratio - 2.0 * 1.0f64.sin()).abs() < 1e-12)
            }
            other => unreachable!("expected divergence report, got {other:?}"),
        }
    }

    #[test]
    fn dft_crosscheck_hat_function() {
        let r = dft_crosscheck(2.0, 16, 512).unwrap();
        assert!(r.max_deviation < 2e-3, "{r:?}");
        // too-short window must be diagnosed
        assert!(matches!(
            dft_crosscheck(2.5, 4, 64),
            Err(SpectralError::InsufficientSupport { .. })
        ));
    }

    #[test]
    fn nfold_table_and_composition() {
        let c = [
            Complex64::new(1.0, 0.5),
            Complex64::new(-0.3, 0.2),
            Complex64::new(0.0, -1.7),
            Complex64::new(2.5, 0.0),
        ];
        let t4 = nfold_fourier_coeffs(&c, 4);
        let two_pi_sq = (2.0 * core::f64::consts::PI) * (2.0 * core::f64::consts::PI);
        assert_eq!(t4.scale, two_pi_sq);
        assert!(!t4.reflected);
        assert_eq!(t4.coeffs, c.to_vec());

        let t2 = nfold_fourier_coeffs(&c, 2);
        assert!(t2.reflected);
        for (m, cm) in t2.coeffs.iter().enumerate() {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(*cm, c[m] * sign);
        }

        // composition: T1 then T1 equals T2, T2 then T2 equals T4
        let t1t1 = nfold_fourier_coeffs(&c, 1).then(1);
        assert_eq!(t1t1, t2);
        let t2t2 = t2.then(2);
        assert_eq!(t2t2, t4);
        assert_eq!(t2t2.scale, two_pi_sq);
    }
}
