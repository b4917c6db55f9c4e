//! Dense polynomials in one variable over [`Rational`].
//!
//! These carry the shift variable `x` of the Bernoulli/Array polynomial
//! families when it is left symbolic, so identities can be compared
//! coefficient-wise instead of at sampled points.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Rational;
use crate::series::SeriesScalar;

/// Polynomial in `x` with exact rational coefficients, ascending degree.
/// The zero polynomial is an empty coefficient list; otherwise the trailing
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolynomialInX {
    coeffs: Vec<Rational>,
}

impl PolynomialInX {
    pub fn zero() -> Self {
        PolynomialInX { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = PolynomialInX { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        PolynomialInX {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = PolynomialInX { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        PolynomialInX::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) - &rhs.coeff(k));
        }
        PolynomialInX::from_coeffs(coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialInX::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolynomialInX::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolynomialInX::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl SeriesScalar for PolynomialInX {
    fn zero() -> Self {
        PolynomialInX::zero()
    }
    fn one() -> Self {
        PolynomialInX::constant(Rational::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        PolynomialInX::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        PolynomialInX::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        PolynomialInX::mul(self, rhs)
    }
    fn div_int(&self, n: u64) -> Self {
        self.scale(&Rational::new(1, n as i64))
    }
    fn negligible(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Display for PolynomialInX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolynomialInX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = PolynomialInX::from_coeffs(vec![rat(1, 2), rat(0, 1), rat(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(PolynomialInX::from_coeffs(vec![rat(0, 1)]).is_zero());
    }

    #[test]
    fn arithmetic_and_eval() {
        // (x + 1)(x - 1) = x^2 - 1
        let xp1 = PolynomialInX::from_coeffs(vec![rat(1, 1), rat(1, 1)]);
        let xm1 = PolynomialInX::from_coeffs(vec![rat(-1, 1), rat(1, 1)]);
        let prod = xp1.mul(&xm1);
        assert_eq!(prod.coeffs(), &[rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(prod.eval(&rat(3, 1)), rat(8, 1));
        assert_eq!(xp1.sub(&xp1), PolynomialInX::zero());
    }
}
