//! Two-parameter Mittag-Leffler function and the ordinary generating
//! function of the fractional spline polynomials.

use core::fmt;

use num_complex::Complex64;

use crate::gamma::{gamma, ln_gamma};
use crate::splines::{frac_spline_poly, truncated_power};

/// Parameters and truncation policy for `E_{a,b}(z) = sum z^n/Gamma(an+b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    pub a: f64,
    pub b: f64,
    /// Target relative tolerance of the truncated sum.
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl MlParams {
    /// `a > 0` keeps the series entire. Defaults: 1e-14 relative, 500 terms.
    pub fn new(a: f64, b: f64) -> Option<Self> {
        (a > 0.0 && a.is_finite() && b.is_finite()).then_some(MlParams {
            a,
            b,
            rel_tol: 1e-14,
            max_terms: 500,
        })
    }

    pub fn with_tolerance(mut self, rel_tol: f64, max_terms: usize) -> Self {
        self.rel_tol = rel_tol;
        self.max_terms = max_terms;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MittagError {
    /// Tail bound not reached within `max_terms`.
    NonConvergent { terms: usize },
    /// The general-parameter path is capped at `|z| <= 50`.
    ArgumentTooLarge { norm: f64 },
}

impl fmt::Display for MittagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MittagError::NonConvergent { terms } => {
                write!(f, "Mittag-Leffler sum not converged within {terms} terms")
            }
            MittagError::ArgumentTooLarge { norm } => {
                write!(f, "|z| = {norm} beyond the general-parameter cap of 50")
            }
        }
    }
}

impl core::error::Error for MittagError {}

/// `1/Gamma(w)` for any real `w` (entire function; zero at the poles).
fn recip_gamma(w: f64) -> f64 {
    if w > 0.0 {
        if w > 170.0 {
            libm::exp(-ln_gamma(w))
        } else {
            1.0 / gamma(w)
        }
    } else if libm::floor(w) == w {
        0.0
    } else {
        // 1/Gamma(w) = sin(pi w) Gamma(1-w) / pi
        libm::sin(core::f64::consts::PI * w) * gamma(1.0 - w) / core::f64::consts::PI
    }
}

/// Truncated series evaluation of `E_{a,b}(z)`.
///
/// Terms stop once the geometric term-ratio bound certifies that the
/// remaining tail is below `rel_tol` relative to the accumulated sum;
/// exhausting `max_terms` first is an error.
pub fn ml(params: &MlParams, z: Complex64) -> Result<Complex64, MittagError> {
    let MlParams {
        a,
        b,
        rel_tol,
        max_terms,
    } = *params;
    let r = z.norm();
    if a != 1.0 && r > 50.0 {
        return Err(MittagError::ArgumentTooLarge { norm: r });
    }

    let mut sum = Complex64::new(0.0, 0.0);
    if a == 1.0 {
        // incremental: term_{n+1} = term_n * z / (n + b)
        let mut term = Complex64::new(recip_gamma(b), 0.0);
        // 1/Gamma vanishes at the poles (integer b <= 0): those leading
        // terms are exactly zero, so restart at the first index with
        // n + b >= 1.
        let mut n = 0usize;
        if term.norm() == 0.0 {
            let n0 = libm::floor(-b).max(0.0) as usize + 1;
            term = Complex64::new(recip_gamma(n0 as f64 + b), 0.0) * z.powu(n0 as u32);
            n = n0;
        }
        loop {
            sum += term;
            let ratio = r / (n as f64 + b).abs();
            if ratio < 0.5 {
                let tail = term.norm() * ratio / (1.0 - ratio);
                if tail <= rel_tol * sum.norm().max(f64::MIN_POSITIVE) {
                    return Ok(sum);
                }
            }
            if n >= max_terms {
                return Err(MittagError::NonConvergent { terms: max_terms });
            }
            term = term * z / (n as f64 + b);
            n += 1;
        }
    }

    // general a > 0: log-space magnitudes against ln Gamma(an + b)
    let ln_r = if r > 0.0 {
        libm::log(r)
    } else {
        f64::NEG_INFINITY
    };
    let theta = z.arg();
    for n in 0..max_terms {
        let w = a * n as f64 + b;
        let term = if r == 0.0 {
            if n == 0 {
                Complex64::new(recip_gamma(b), 0.0)
            } else {
                break;
            }
        } else if w > 0.0 {
            let mag = libm::exp(n as f64 * ln_r - ln_gamma(w));
            Complex64::from_polar(mag, theta * n as f64)
        } else {
            Complex64::from_polar(libm::pow(r, n as f64), theta * n as f64) * recip_gamma(w)
        };
        sum += term;
        if w > 1.0 {
            // ratio bound |z| Gamma(w)/Gamma(w+a) <= |z| w^{-a}
            let ratio = r * libm::exp(-a * libm::log(w));
            if ratio < 0.5 {
                let tail = term.norm() * ratio / (1.0 - ratio);
                if tail <= rel_tol * sum.norm().max(f64::MIN_POSITIVE) {
                    return Ok(sum);
                }
            }
        }
    }
    if r == 0.0 {
        return Ok(sum);
    }
    Err(MittagError::NonConvergent { terms: max_terms })
}

/// Real-argument convenience wrapper.
pub fn ml_real(params: &MlParams, z: f64) -> Result<f64, MittagError> {
    ml(params, Complex64::new(z, 0.0)).map(|v| v.re)
}

/// Both sides of the ordinary generating function of the fractional spline
/// polynomials:
/// `sum_n S_n^{(alpha)}(x) t^n  =  sum_k (-1)^k binom(alpha+1,k) (x-k)_+^alpha
///  E_{1,alpha+1}((x-k)_+ t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OgfCheck {
    pub lhs: f64,
    pub rhs: f64,
}

/// `terms` bounds the `n`-sum on the left; the `k`-sum self-terminates at
/// `k = floor(x)` because the truncated powers vanish, so `k_max` only
/// needs to reach `ceil(x)`.
pub fn frac_spline_ogf(
    alpha: f64,
    x: f64,
    t: f64,
    terms: usize,
    k_max: usize,
) -> Result<OgfCheck, MittagError> {
    assert!(alpha > 0.0);
    assert!(terms >= 1);
    assert!(k_max as f64 >= libm::ceil(x), "k_max must reach ceil(x)");

    let mut lhs = 0.0;
    let mut tn = 1.0f64;
    for n in 0..terms {
        if n > 0 {
            tn *= t;
        }
        lhs += frac_spline_poly(n as u32, alpha, x) * tn;
    }

    let params = MlParams::new(1.0, alpha + 1.0).expect("alpha + 1 > 0");
    let mut rhs = 0.0;
    let mut coeff = 1.0f64; // (-1)^k binom(alpha+1, k)
    let a1 = alpha + 1.0;
    for k in 0..=k_max {
        if k > 0 {
            coeff *= (k as f64 - 1.0 - a1) / k as f64;
        }
        let xk = x - k as f64;
        if xk <= 0.0 {
            break;
        }
        rhs += coeff * truncated_power(xk, alpha) * ml_real(&params, xk * t)?;
    }
    Ok(OgfCheck { lhs, rhs })
}
