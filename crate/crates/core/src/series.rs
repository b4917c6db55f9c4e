//! Degree-capped formal power series.
//!
//! [`TruncatedSeries`] holds coefficients of `t^0 .. t^N` and never reads or
//! writes past the cap. It is generic over the scalar: exact [`Rational`]
//! coefficients for identity work, `f64`/[`Complex64`] when a fractional
//! order forces floating point. The scalar-kind mismatch the operations
//! would otherwise have to reject at runtime is ruled out by the type
//! parameter.
//!
//! This is a fixed-order coefficient engine, not a computer-algebra system:
//! there is no composition, reversion or simplification. The only
//! transcendental helpers are the coefficient recurrences for `log`, `exp`
//! and real powers of a float series, which the fractional-order
//! verification paths need.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::rational::Rational;

/// Absolute tolerance under which a float constant term counts as zero for
/// the divide-by-`t` precondition.
pub const DIV_T_TOL: f64 = 1e-12;

/// Errors from series operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// `div_t` called on a series whose constant term is not (negligibly) zero.
    NonzeroConstantTerm,
    /// `coeff` index beyond the truncation degree.
    IndexOutOfRange { index: usize, order: usize },
    /// Operation would drop the degree below zero.
    DegreeUnderflow,
    /// `log`/`pow_real` need constant term exactly 1.
    ConstantTermNotOne,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonzeroConstantTerm => {
                write!(f, "divide by t requires a zero constant term")
            }
            SeriesError::IndexOutOfRange { index, order } => {
                write!(
                    f,
                    "coefficient index {index} beyond truncation degree {order}"
                )
            }
            SeriesError::DegreeUnderflow => write!(f, "operation drops truncation degree below 0"),
            SeriesError::ConstantTermNotOne => {
                write!(f, "series logarithm requires constant term 1")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// Scalar types usable as series coefficients.
pub trait SeriesScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Exact division by a nonzero machine integer (used for `c^n/n!` terms).
    fn div_int(&self, n: u64) -> Self;
    /// Whether the value counts as zero for the `div_t` precondition.
    fn negligible(&self) -> bool;
}

/// Float scalars, for the fractional-order (non-exact) series paths.
pub trait FloatScalar: SeriesScalar + Copy {
    fn from_f64(x: f64) -> Self;
    fn scale(&self, k: f64) -> Self;
}

impl SeriesScalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_int(&self, n: u64) -> Self {
        self * &Rational::new(1, n as i64)
    }
    fn negligible(&self) -> bool {
        self.is_zero()
    }
}

impl SeriesScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_int(&self, n: u64) -> Self {
        self / n as f64
    }
    fn negligible(&self) -> bool {
        num_traits::Float::abs(*self) <= DIV_T_TOL
    }
}

impl SeriesScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_int(&self, n: u64) -> Self {
        self / n as f64
    }
    fn negligible(&self) -> bool {
        self.norm() <= DIV_T_TOL
    }
}

impl FloatScalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn scale(&self, k: f64) -> Self {
        self * k
    }
}

impl FloatScalar for Complex64 {
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn scale(&self, k: f64) -> Self {
        self * k
    }
}

/// Formal power series truncated at an inclusive degree `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: SeriesScalar> TruncatedSeries<T> {
    /// Wraps a coefficient list; `coeffs[n]` is the coefficient of `t^n`.
    ///
    /// Panics on an empty list (every series carries at least degree 0).
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series needs at least the constant term"
        );
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = T::one();
        TruncatedSeries { coeffs }
    }

    /// The monomial `t^n` at the given truncation degree (`n <= order`).
    pub fn monomial(n: usize, order: usize) -> Self {
        assert!(n <= order);
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[n] = T::one();
        TruncatedSeries { coeffs }
    }

    /// Series of `e^{c t}`: coefficients `c^n / n!` for `n = 0..=order`.
    pub fn exp_linear(c: T, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(T::one());
        let mut term = T::one();
        for n in 1..=order {
            term = term.mul(&c).div_int(n as u64);
            coeffs.push(term.clone());
        }
        TruncatedSeries { coeffs }
    }

    /// Truncation degree `N` (inclusive).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^n`.
    pub fn coeff(&self, n: usize) -> Result<&T, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::IndexOutOfRange {
            index: n,
            order: self.order(),
        })
    }

    /// Coefficient-wise sum, truncated to the shorter input.
    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeffs[i].add(&rhs.coeffs[i])).collect();
        TruncatedSeries { coeffs }
    }

    /// Coefficient-wise difference, truncated to the shorter input.
    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeffs[i].sub(&rhs.coeffs[i])).collect();
        TruncatedSeries { coeffs }
    }

    /// Cauchy product, truncated to the shorter input.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if *a == T::zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        TruncatedSeries { coeffs }
    }

    /// `self^k` by repeated squaring, at this series' truncation degree.
    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::one(self.order());
        let mut sq = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Divides by `t`: shifts coefficients down one slot, drops the degree
    /// by one. The constant term must be (negligibly) zero.
    pub fn div_t(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].negligible() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        if self.coeffs.len() == 1 {
            return Err(SeriesError::DegreeUnderflow);
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiplies by `t`: shifts coefficients up, raising the degree by one.
    pub fn mul_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Maps every coefficient into another scalar type.
    pub fn map<U: SeriesScalar>(&self, f: impl FnMut(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<T: FloatScalar> TruncatedSeries<T> {
    /// Coefficient recurrence for `log(self)`; requires constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].sub(&T::one()).negligible() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = self.coeffs.len();
        let mut out = vec![T::zero(); n];
        for m in 1..n {
            // m*L_m = m*h_m - sum_{j=1}^{m-1} j L_j h_{m-j}
            let mut acc = self.coeffs[m].scale(m as f64);
            for (j, lj) in out.iter().enumerate().take(m).skip(1) {
                acc = acc.sub(&lj.scale(j as f64).mul(&self.coeffs[m - j]));
            }
            out[m] = acc.div_int(m as u64);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Coefficient recurrence for `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].negligible() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = self.coeffs.len();
        let mut out = vec![T::zero(); n];
        out[0] = T::one();
        for m in 1..n {
            let mut acc = T::zero();
            for (j, g) in self.coeffs.iter().enumerate().take(m + 1).skip(1) {
                acc = acc.add(&g.scale(j as f64).mul(&out[m - j]));
            }
            out[m] = acc.div_int(m as u64);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Real power `self^alpha` via `exp(alpha * log(self))`; requires
    /// constant term 1.
    pub fn pow_real(&self, alpha: f64) -> Result<Self, SeriesError> {
        let log = self.log()?;
        log.map(|c| c.scale(alpha)).exp()
    }
}

/// Exact series of `(e^t - 1)/t` at the given truncation degree:
/// coefficients `1/(n+1)!`.
pub fn expm1_over_t(order: usize) -> TruncatedSeries<Rational> {
    let e = TruncatedSeries::exp_linear(Rational::one(), order + 1);
    let one = TruncatedSeries::one(order + 1);
    e.sub(&one).div_t().expect("constant term cancels exactly")
}
