//! The combinatorial number and polynomial families behind the spline
//! symbol: Stirling numbers of the second kind, generalized binomial
//! coefficients, Bernoulli numbers/polynomials of negative order, Catalan
//! numbers, and the generalized Array-type polynomials
//! `S_k^{n+k}(x; a, b; lambda)`.
//!
//! Everything exact is computed by at least two independent routes, a
//! recurrence route and a generating-function route, so each family can
//! serve as an oracle for the other.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gamma::gamma;
use crate::poly::PolynomialInX;
use crate::rational::Rational;
use crate::series::{expm1_over_t, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq)]
pub enum CombinError {
    /// Symbolic (polynomial-in-x) output needs exact parameters.
    SymbolicNeedsExactParams,
    /// Float-mode parameters must satisfy `a > 0`, `b > 0`.
    NonPositiveBase,
    Series(SeriesError),
}

impl fmt::Display for CombinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinError::SymbolicNeedsExactParams => {
                write!(f, "symbolic Array polynomial requires exact parameters")
            }
            CombinError::NonPositiveBase => write!(f, "parameters a, b must be positive"),
            CombinError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CombinError {}

impl From<SeriesError> for CombinError {
    fn from(e: SeriesError) -> Self {
        CombinError::Series(e)
    }
}

/// Stirling number of the second kind `S2(m, n)` by the triangular
/// recurrence `S2(m,n) = n S2(m-1,n) + S2(m-1,n-1)`; zero for `m < n`.
pub fn stirling2(m: usize, n: usize) -> BigInt {
    if n > m {
        return BigInt::zero();
    }
    if n == 0 {
        return if m == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    // row-by-row triangle up to m; row[j] = S2(row_index, j)
    let mut row: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    row[0] = BigInt::one(); // S2(0, 0)
    for _i in 1..=m {
        for j in (1..=n).rev() {
            let carried = core::mem::take(&mut row[j]);
            row[j] = carried * BigInt::from(j) + &row[j - 1];
        }
        row[0] = BigInt::zero(); // S2(i, 0) = 0 for i >= 1
    }
    row[n].clone()
}

/// `S2(m, n)` extracted from the generating function `(e^z - 1)^n / n!`:
/// the independent cross-check route.
pub fn stirling2_via_gf(m: usize, n: usize) -> BigInt {
    let em1 = TruncatedSeries::exp_linear(Rational::one(), m).sub(&TruncatedSeries::one(m));
    let coeff = em1.pow(n as u64).coeff(m).expect("within order").clone();
    // S2(m,n) = m!/n! [z^m](e^z-1)^n
    let v = coeff * Rational::factorial(m) * Rational::factorial(n).recip();
    debug_assert!(v.is_integer());
    v.numer().clone()
}

/// Generalized binomial coefficient `binom(alpha, k)` over the rationals,
/// by the product recurrence `binom(a,k) = binom(a,k-1) (a-k+1)/k`.
///
/// For integer `alpha < k` the product crosses an exact zero, which is the
/// finite value the Gamma-quotient definition degenerates to at its poles.
pub fn gen_binomial(alpha: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 1..=k {
        acc = acc * (alpha - &Rational::from_integer(j as i64 - 1)) * Rational::new(1, j as i64);
    }
    acc
}

/// `binom(alpha, k)` in floating point, same recurrence.
pub fn gen_binomial_f64(alpha: f64, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for j in 1..=k {
        acc *= (alpha - (j as f64 - 1.0)) / j as f64;
    }
    acc
}

/// `binom(n + alpha, n)` for real `alpha`, as the product
/// `prod_{j=1..n} (alpha + j)/j`.
pub fn binom_shift_f64(alpha: f64, n: usize) -> f64 {
    let mut acc = 1.0f64;
    for j in 1..=n {
        acc *= (alpha + j as f64) / j as f64;
    }
    acc
}

/// Exact binomial coefficient for nonnegative integer arguments.
pub fn binomial_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Catalan number `C_n = binom(2n, n)/(n+1)`, exact.
pub fn catalan(n: usize) -> BigInt {
    binomial_int(2 * n, n) / BigInt::from(n + 1)
}

/// Bernoulli number of order `-n`, evaluated at `x`: the coefficient of
/// `z^m/m!` in `((e^z - 1)/z)^n e^{zx}` (generating-function route).
pub fn bernoulli_neg_order(m: usize, n: usize, x: &Rational) -> Rational {
    let base = expm1_over_t(m);
    let shift = TruncatedSeries::exp_linear(x.clone(), m);
    let series = base.pow(n as u64).mul(&shift);
    series.coeff(m).expect("within order") * &Rational::factorial(m)
}

/// Same value by the Stirling route: translate the known `x = 0` values
/// `B_j^{(-n)}(0) = S2(j+n, n)/binom(j+n, n)` with the Appell binomial
/// expansion. Independent of the series engine.
pub fn bernoulli_neg_order_via_stirling(m: usize, n: usize, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for j in 0..=m {
        let b0 =
            Rational::from(stirling2(j + n, n)) * Rational::from(binomial_int(j + n, n)).recip();
        let c = Rational::from(binomial_int(m, j));
        acc += c * b0 * x.pow((m - j) as i64);
    }
    acc
}

/// `B_m^{(-n)}(x)` as an exact polynomial in `x`.
pub fn bernoulli_neg_order_poly(m: usize, n: usize) -> PolynomialInX {
    let base = expm1_over_t(m).map(|c| PolynomialInX::constant(c.clone()));
    let shift = TruncatedSeries::exp_linear(PolynomialInX::x(), m);
    let series = base.pow(n as u64).mul(&shift);
    series
        .coeff(m)
        .expect("within order")
        .scale(&Rational::factorial(m))
}

/// Parameters `(a, b, lambda)` of the Array-type polynomial family.
///
/// The exact variant stores `ln a` and `ln b` as rationals (so `a`, `b` are
/// rational powers of `e`) and fixes `lambda = 1`; under those parameters
/// every generating-function coefficient is rational in `x`. Anything else
/// runs in floating point.
#[derive(Debug, Clone, PartialEq)]
pub enum ArrayPolyParams {
    Exact { ln_a: Rational, ln_b: Rational },
    Float { a: f64, b: f64, lambda: f64 },
}

impl ArrayPolyParams {
    /// `(a, b, lambda) = (1, e, 1)`, the spline-symbol instance.
    pub fn one_e() -> Self {
        ArrayPolyParams::Exact {
            ln_a: Rational::zero(),
            ln_b: Rational::one(),
        }
    }

    /// `(a, b, lambda) = (e, 1, 1)`, the reflected instance.
    pub fn e_one() -> Self {
        ArrayPolyParams::Exact {
            ln_a: Rational::one(),
            ln_b: Rational::zero(),
        }
    }

    pub fn exact_powers_of_e(ln_a: Rational, ln_b: Rational) -> Self {
        ArrayPolyParams::Exact { ln_a, ln_b }
    }

    pub fn float(a: f64, b: f64, lambda: f64) -> Result<Self, CombinError> {
        if a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() && lambda.is_finite() {
            Ok(ArrayPolyParams::Float { a, b, lambda })
        } else {
            Err(CombinError::NonPositiveBase)
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ArrayPolyParams::Exact { .. })
    }
}

/// Generalized Array-type polynomial `S_k^{n+k}(x; a, b; lambda)` under
/// exact parameters:
/// `binom(n+k, k) n! [t^n] ((b^t - a^t)/t)^k b^{xt}`.
pub fn array_poly(
    n: usize,
    k: u32,
    x: &Rational,
    params: &ArrayPolyParams,
) -> Result<Rational, CombinError> {
    let ArrayPolyParams::Exact { ln_a, ln_b } = params else {
        // Float parameters have a float-valued family; see array_poly_f64.
        return Err(CombinError::SymbolicNeedsExactParams);
    };
    let base = TruncatedSeries::exp_linear(ln_b.clone(), n + 1)
        .sub(&TruncatedSeries::exp_linear(ln_a.clone(), n + 1))
        .div_t()?;
    let shift = TruncatedSeries::exp_linear(ln_b * x, n);
    let series = base.pow(k as u64).mul(&shift);
    let c = series.coeff(n)?.clone();
    Ok(c * Rational::factorial(n) * Rational::from(binomial_int(n + k as usize, k as usize)))
}

/// `S_k^{n+k}(x; a, b; lambda)` with `x` kept symbolic (exact parameters
/// only).
pub fn array_poly_in_x(
    n: usize,
    k: u32,
    params: &ArrayPolyParams,
) -> Result<PolynomialInX, CombinError> {
    let ArrayPolyParams::Exact { ln_a, ln_b } = params else {
        return Err(CombinError::SymbolicNeedsExactParams);
    };
    let base = TruncatedSeries::exp_linear(ln_b.clone(), n + 1)
        .sub(&TruncatedSeries::exp_linear(ln_a.clone(), n + 1))
        .div_t()?
        .map(|c| PolynomialInX::constant(c.clone()));
    let shift = TruncatedSeries::exp_linear(PolynomialInX::x().scale(ln_b), n);
    let series = base.pow(k as u64).mul(&shift);
    let scale = Rational::factorial(n) * Rational::from(binomial_int(n + k as usize, k as usize));
    Ok(series.coeff(n)?.scale(&scale))
}

/// Float-mode `S_k^{n+k}(x; a, b; lambda)` for arbitrary positive `a, b`
/// and real `lambda`.
///
/// For `lambda != 1` the base `(lambda b^t - a^t)/t` is a Laurent series
/// with the single singular term `(lambda - 1)/t`; its `k`-th power is
/// expanded binomially against the regular part, so the `t^n` coefficient
/// collects contributions from regular coefficients up to `t^{n+k}`.
pub fn array_poly_f64(
    n: usize,
    k: u32,
    x: f64,
    params: &ArrayPolyParams,
) -> Result<f64, CombinError> {
    let (p, q, lambda) = match params {
        ArrayPolyParams::Exact { ln_a, ln_b } => (ln_a.to_f64(), ln_b.to_f64(), 1.0),
        ArrayPolyParams::Float { a, b, lambda } => (libm::log(*a), libm::log(*b), *lambda),
    };
    let order = n + k as usize;
    // regular part of (lambda e^{qt} - e^{pt})/t: r_j = (lambda q^{j+1} - p^{j+1})/(j+1)!;
    // the dropped constant lambda - 1 is the singular 1/t term handled below
    let numerator = TruncatedSeries::exp_linear(q, order + 1)
        .map(|c| lambda * c)
        .sub(&TruncatedSeries::exp_linear(p, order + 1));
    let regular = TruncatedSeries::from_coeffs(numerator.coeffs()[1..].to_vec());
    let shift = TruncatedSeries::exp_linear(q * x, order);
    let sing = lambda - 1.0;

    let mut coeff_n = 0.0f64;
    let mut sing_pow = 1.0f64;
    for i in 0..=k {
        if i > 0 {
            sing_pow *= sing;
            if sing_pow == 0.0 {
                break;
            }
        }
        let body = regular.pow((k - i) as u64).mul(&shift);
        let c = *body.coeff(n + i as usize)?;
        coeff_n += gen_binomial_f64(k as f64, i as usize) * sing_pow * c;
    }
    let mut factorial_n = 1.0f64;
    for j in 2..=n {
        factorial_n *= j as f64;
    }
    Ok(coeff_n * factorial_n * binom_shift_f64(k as f64, n))
}

/// Power series of `((e^u - 1)/u)^alpha e^{xu}` up to `u^order`; the
/// analytic continuation of the Array-polynomial generating function to
/// real order. With `u = -i omega` this is the Maclaurin expansion of
/// `B^_alpha(omega) e^{-i omega x}`.
pub fn shifted_symbol_series(alpha: f64, x: f64, order: usize) -> TruncatedSeries<f64> {
    let base = expm1_over_t(order).map(|c| c.to_f64());
    let powered = base
        .pow_real(alpha)
        .expect("constant term of (e^u-1)/u is exactly 1");
    let shift = TruncatedSeries::exp_linear(x, order);
    powered.mul(&shift)
}

/// `S_alpha^{n+alpha}(x; 1, e; 1)` for real `alpha > 0`, from the
/// continued generating function.
pub fn array_poly_frac(n: usize, alpha: f64, x: f64) -> f64 {
    let series = shifted_symbol_series(alpha, x, n);
    let mut factorial_n = 1.0f64;
    for j in 2..=n {
        factorial_n *= j as f64;
    }
    series.coeff(n).expect("within order") * factorial_n * binom_shift_f64(alpha, n)
}

/// Finite explicit-representation sum
/// `1/Gamma(alpha+1) * sum_{k=0..alpha} (-1)^k binom(alpha,k) (x+k)^{n+alpha}`
/// for integer `alpha`, exact over the rationals.
///
/// This is the printed form of the representation; for odd `alpha` it
/// differs from `array_poly` by the factor `(-1)^alpha` (the verification
/// suite reports both variants).
pub fn stirling_explicit_rep_exact(alpha: u32, n: usize, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let a = Rational::from_integer(alpha as i64);
    for k in 0..=alpha {
        let c = gen_binomial(&a, k as usize);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let base = x + &Rational::from_integer(k as i64);
        acc += Rational::from_integer(sign) * c * base.pow((n + alpha as usize) as i64);
    }
    acc * Rational::factorial(alpha as usize).recip()
}

/// Abel-regularized evaluation of the explicit-representation series at
/// real `alpha`: the series `sum_k (-1)^k binom(alpha,k) (x+k)^{n+alpha} z^k`
/// is summed at `z = 1 - 2^{-j}` for `j = 3..=levels` and Richardson
/// extrapolation drives `z -> 1`.
#[derive(Debug, Clone)]
pub struct AbelExtrapolation {
    /// Best extrapolant (top-right of the tableau), divided by
    /// `Gamma(alpha+1)`.
    pub value: f64,
    /// Difference between the last two extrapolation stages.
    pub residual: f64,
    /// Whether the extrapolants settled to `tol`.
    pub converged: bool,
    /// The raw Abel sums `f(1 - 2^{-j})/Gamma(alpha+1)`, `j = 3..=levels`.
    pub abel_sums: Vec<f64>,
}

/// Levels is the largest `j`; the regularization needs `levels >= 8` to
/// have enough extrapolation stages to judge convergence.
pub fn stirling_explicit_rep_abel(
    alpha: f64,
    n: usize,
    x: f64,
    levels: u32,
    tol: f64,
) -> AbelExtrapolation {
    assert!(levels >= 8, "Abel regularization needs levels >= 8");
    let scale = 1.0 / gamma(alpha + 1.0);
    let mut sums = Vec::new();
    for j in 3..=levels {
        let z = 1.0 - libm::pow(2.0, -(j as f64));
        sums.push(abel_series(alpha, n, x, z) * scale);
    }
    // Richardson tableau in powers of h = 2^{-j}.
    let mut tableau = sums.clone();
    let rows = tableau.len();
    let mut best = *tableau.last().expect("at least one level");
    let mut prev_best = f64::INFINITY;
    for m in 1..rows {
        let factor = libm::pow(2.0, m as f64);
        for i in (m..rows).rev() {
            tableau[i] = (factor * tableau[i] - tableau[i - 1]) / (factor - 1.0);
        }
        prev_best = best;
        best = tableau[rows - 1];
    }
    let residual = (best - prev_best).abs();
    AbelExtrapolation {
        value: best,
        residual,
        converged: residual <= tol * best.abs().max(1.0),
        abel_sums: sums,
    }
}

fn abel_series(alpha: f64, n: usize, x: f64, z: f64) -> f64 {
    // effective cutoff: z^k < 1e-18 relative after k ~ 41/(1-z)
    let cap = (41.0 / (1.0 - z)) as usize + 64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut coeff = 1.0f64; // (-1)^k binom(alpha,k)
    let mut zk = 1.0f64;
    let p = n as f64 + alpha;
    for k in 0..cap {
        if k > 0 {
            coeff *= (k as f64 - 1.0 - alpha) / k as f64;
            zk *= z;
            if coeff == 0.0 {
                break;
            }
        }
        let term = coeff * zk * libm::pow(x + k as f64, p);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}
