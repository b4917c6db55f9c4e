//! Double-double arithmetic (~31 significant digits).
//!
//! The partition-of-unity tail of a fractional B-spline decays like
//! `K^{-alpha}` while the truncated-power terms that produce it grow like
//! `K^{alpha-1}`; at `K = 2^10` and `alpha = pi` the cancellation eats more
//! digits than `f64` has. The far-field evaluation therefore runs in
//! double-double. Algorithms are the classical error-free transforms
//! (Dekker/Knuth, the QD library formulations) with `fma` from libm.

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

pub(crate) const DD_ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub(crate) const DD_ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
const DD_LN2: Dd = Dd {
    hi: core::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};
const DD_HALF_LN_2PI: Dd = Dd {
    hi: 0.9189385332046728,
    lo: -3.8782941580672414e-17,
};

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact difference of two doubles.
    #[inline]
    pub fn two_diff(a: f64, b: f64) -> Self {
        let (s, e) = two_sum(a, -b);
        Dd { hi: s, lo: e }
    }

    /// Exact sum of two doubles.
    #[inline]
    pub fn exact_sum(a: f64, b: f64) -> Self {
        let (s, e) = two_sum(a, b);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(self, rhs: Dd) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    pub fn sub(self, rhs: Dd) -> Self {
        self.add(rhs.neg())
    }

    pub fn mul(self, rhs: Dd) -> Self {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, rhs: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, rhs);
        let p2 = p2 + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn div(self, rhs: Dd) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul_f64(q2));
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from_f64(q3))
    }

    pub fn div_f64(self, rhs: f64) -> Self {
        self.div(Dd::from_f64(rhs))
    }

    fn ldexp(self, k: i32) -> Self {
        Dd {
            hi: libm::ldexp(self.hi, k),
            lo: libm::ldexp(self.lo, k),
        }
    }

    /// `e^self` by argument reduction against ln 2 and a Taylor tail.
    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -709.0 {
            return DD_ZERO;
        }
        let k = libm::round(self.hi / DD_LN2.hi);
        let r = self.sub(DD_LN2.mul_f64(k));
        // |r| <= ln2/2; Taylor to ~eps^2.
        let mut sum = DD_ONE;
        let mut term = DD_ONE;
        for n in 1..40u64 {
            term = term.mul(r).div_f64(n as f64);
            sum = sum.add(term);
            if libm::fabs(term.hi) < 1e-35 * libm::fabs(sum.hi) {
                break;
            }
        }
        sum.ldexp(k as i32)
    }

    /// Natural log for positive values: float seed plus one Newton step.
    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let y0 = libm::log(self.hi);
        // y = y0 + self * e^{-y0} - 1 doubles the seed's precision.
        let corr = self.mul(Dd::from_f64(-y0).exp()).sub(DD_ONE);
        Dd::from_f64(y0).add(corr)
    }

    /// `self^p` for positive base.
    pub fn pow(self, p: Dd) -> Self {
        self.ln().mul(p).exp()
    }
}

/// `B_{2k} / (2k (2k-1))` as exact integer fractions, k = 1..=15, for the
/// Stirling series of `ln Gamma`.
const STIRLING_FRACTIONS: [(i64, i64); 15] = [
    (1, 12),
    (-1, 360),
    (1, 1260),
    (-1, 1680),
    (1, 1188),
    (-691, 360360),
    (1, 156),
    (-3617, 122400),
    (43867, 244188),
    (-174611, 125400),
    (77683, 5796),
    (-236364091, 1506960),
    (657931, 300),
    (-3392780147, 93960),
    (1723168255201, 2492028),
];

/// `ln Gamma(x)` in double-double for `x > 0`.
///
/// Shifts the argument above 25 with the recurrence and applies the
/// Stirling series there; the truncation error is then below 1e-34.
pub(crate) fn ln_gamma_dd(x: Dd) -> Dd {
    debug_assert!(x.hi > 0.0);
    let mut z = x;
    let mut shift = DD_ZERO;
    while z.hi < 25.0 {
        shift = shift.add(z.ln());
        z = z.add(DD_ONE);
    }
    let ln_z = z.ln();
    let mut acc = z
        .sub(Dd::from_f64(0.5))
        .mul(ln_z)
        .sub(z)
        .add(DD_HALF_LN_2PI);
    let inv_z2 = DD_ONE.div(z.mul(z));
    let mut zpow = DD_ONE.div(z); // z^{-(2k-1)}
    for (num, den) in STIRLING_FRACTIONS {
        acc = acc.add(Dd::from_f64(num as f64).div_f64(den as f64).mul(zpow));
        zpow = zpow.mul(inv_z2);
    }
    acc.sub(shift)
}

pub(crate) fn gamma_dd(x: Dd) -> Dd {
    ln_gamma_dd(x).exp()
}
