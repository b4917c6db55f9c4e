//! Command-line companion of `fracspline-core`: the identity-verification
//! suite, deterministic CSV/JSON artifact formats, and grid evaluation
//! plumbing. The `fracspline` binary is a thin shell over this library so
//! integration tests can drive everything in-process.

pub mod config;
pub mod formats;
pub mod parallel;
pub mod report;
pub mod verify;
