//! Numerical and exact-arithmetic kernels for fractional B-splines.
//!
//! The crate is organised around one idea: every quantity that shows up in
//! the Fourier-domain study of fractional B-splines (Stirling numbers,
//! Nørlund Bernoulli polynomials of negative order, Array-type polynomial
//! families, delta-expansion coefficients, Mittag-Leffler sums) can be
//! reached by at least two independent routes, one of them exact over
//! arbitrary-precision rationals. The modules here provide both routes:
//!
//! * [`rational`] / [`series`] / [`poly`]: the exact coefficient engine
//!   (big rationals, degree-capped formal power series, polynomials).
//! * [`combin`]: Stirling-2, generalized binomials, Bernoulli numbers of
//!   order `-n`, Catalan numbers and Array-type polynomials.
//! * [`splines`]: time-domain evaluation of integer and fractional
//!   B-splines, fractional spline polynomials and forward differences.
//! * [`spectral`]: closed-form Fourier symbols, their branch handling,
//!   generating-function checks and DFT cross-validation.
//! * [`distributional`]: delta-expansion coefficient algebra, test-function
//!   pairings, the kernel `K_alpha` and numeric fractional integration.
//! * [`mittag`]: two-parameter Mittag-Leffler evaluation and the ordinary
//!   generating function of the fractional spline polynomials.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `fracspline-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod combin;
pub mod distributional;
pub mod gamma;
pub mod mittag;
pub mod poly;
pub mod rational;
pub mod series;
pub mod spectral;
pub mod splines;

mod dd;
mod quad;

pub use num_complex::Complex64;
pub use rational::Rational;
pub use series::TruncatedSeries;

/// Default truncation degree for identity verification; covers every exact
/// sweep in the verification suite (`m + n <= 30`) with headroom.
pub const DEFAULT_ORDER: usize = 32;
