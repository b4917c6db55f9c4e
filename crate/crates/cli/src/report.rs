//! Machine-readable verdicts for identity checks.
//!
//! One [`IdentityReport`] records one identity at one parameter point under
//! one variant (argument/sign/branch convention). Reports are deterministic:
//! parameter maps are ordered, report lists are sorted before serialization,
//! and every float that reaches JSON is finite.

use std::collections::BTreeMap;

use fracspline_core::Rational;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ExactEqual,
    NumericMatch,
    Mismatch,
    NonConvergent,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::ExactEqual => "exact_equal",
            Status::NumericMatch => "numeric_match",
            Status::Mismatch => "mismatch",
            Status::NonConvergent => "non_convergent",
        }
    }
}

/// A side of a compared identity: exact values render as rational strings
/// so that `exact_equal` verdicts never pass through floating point.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum ReportValue {
    Str(String),
    Real(f64),
    Complex { re: f64, im: f64 },
    RealList(Vec<f64>),
    StrList(Vec<String>),
}

impl ReportValue {
    pub fn exact(r: &Rational) -> Self {
        ReportValue::Str(r.to_ratio_string())
    }

    pub fn exact_list(rs: &[Rational]) -> Self {
        ReportValue::StrList(rs.iter().map(|r| r.to_ratio_string()).collect())
    }

    pub fn complex(z: fracspline_core::Complex64) -> Self {
        ReportValue::Complex { re: z.re, im: z.im }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity_id: String,
    /// Convention under test, e.g. `x=0 sign=+` or `branch e^{-i pi alpha}`.
    pub variant: String,
    pub params: BTreeMap<String, String>,
    pub lhs: ReportValue,
    pub rhs: ReportValue,
    pub status: Status,
    /// Absolute residual; exactly 0.0 for `exact_equal`.
    pub residual: f64,
    /// The tolerance this check was held to (0 for exact comparisons).
    pub tolerance: f64,
    /// Whether this variant is the established form of the identity; a
    /// failing established variant fails the whole run.
    pub established: bool,
}

impl IdentityReport {
    /// Exact rational comparison.
    pub fn exact_cmp(
        identity_id: &str,
        variant: &str,
        params: BTreeMap<String, String>,
        lhs: &Rational,
        rhs: &Rational,
        established: bool,
    ) -> Self {
        let equal = lhs == rhs;
        let residual = if equal {
            0.0
        } else {
            (lhs - rhs).abs().to_f64()
        };
        IdentityReport {
            identity_id: identity_id.into(),
            variant: variant.into(),
            params,
            lhs: ReportValue::exact(lhs),
            rhs: ReportValue::exact(rhs),
            status: if equal {
                Status::ExactEqual
            } else {
                Status::Mismatch
            },
            residual,
            tolerance: 0.0,
            established,
        }
    }

    /// Exact comparison of coefficient lists.
    pub fn exact_list_cmp(
        identity_id: &str,
        variant: &str,
        params: BTreeMap<String, String>,
        lhs: &[Rational],
        rhs: &[Rational],
        established: bool,
    ) -> Self {
        let equal = lhs == rhs;
        let residual = if equal {
            0.0
        } else {
            lhs.iter()
                .zip(rhs)
                .map(|(a, b)| (a - b).abs().to_f64())
                .fold(0.0f64, f64::max)
        };
        IdentityReport {
            identity_id: identity_id.into(),
            variant: variant.into(),
            params,
            lhs: ReportValue::exact_list(lhs),
            rhs: ReportValue::exact_list(rhs),
            status: if equal {
                Status::ExactEqual
            } else {
                Status::Mismatch
            },
            residual,
            tolerance: 0.0,
            established,
        }
    }

    /// Float comparison at a tolerance.
    #[allow(clippy::too_many_arguments)]
    pub fn numeric_cmp(
        identity_id: &str,
        variant: &str,
        params: BTreeMap<String, String>,
        lhs: ReportValue,
        rhs: ReportValue,
        residual: f64,
        tolerance: f64,
        established: bool,
    ) -> Self {
        IdentityReport {
            identity_id: identity_id.into(),
            variant: variant.into(),
            params,
            lhs,
            rhs,
            status: if residual <= tolerance {
                Status::NumericMatch
            } else {
                Status::Mismatch
            },
            residual,
            tolerance,
            established,
        }
    }

    /// A check whose defining limit did not settle; carries diagnostics
    /// instead of a verdict.
    pub fn non_convergent(
        identity_id: &str,
        variant: &str,
        params: BTreeMap<String, String>,
        lhs: ReportValue,
        rhs: ReportValue,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        IdentityReport {
            identity_id: identity_id.into(),
            variant: variant.into(),
            params,
            lhs,
            rhs,
            status: Status::NonConvergent,
            residual,
            tolerance,
            established: false,
        }
    }

    /// Established variant that failed its check.
    pub fn is_established_failure(&self) -> bool {
        self.established && !matches!(self.status, Status::ExactEqual | Status::NumericMatch)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Summary {
    pub total: usize,
    pub counts: BTreeMap<String, usize>,
    pub established_failures: usize,
    /// Worst residual seen per identity.
    pub worst_residual: BTreeMap<String, f64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub summary: Summary,
    pub reports: Vec<IdentityReport>,
}

impl SuiteReport {
    /// Sorts, aggregates and seals a report list.
    pub fn new(mut reports: Vec<IdentityReport>) -> Self {
        reports.sort_by(|a, b| {
            (&a.identity_id, &a.variant, format!("{:?}", a.params)).cmp(&(
                &b.identity_id,
                &b.variant,
                format!("{:?}", b.params),
            ))
        });
        let mut counts = BTreeMap::new();
        let mut worst: BTreeMap<String, f64> = BTreeMap::new();
        let mut established_failures = 0;
        for r in &reports {
            *counts.entry(r.status.as_str().to_string()).or_insert(0) += 1;
            let w = worst.entry(r.identity_id.clone()).or_insert(0.0);
            if r.residual > *w {
                *w = r.residual;
            }
            if r.is_established_failure() {
                established_failures += 1;
            }
        }
        SuiteReport {
            summary: Summary {
                total: reports.len(),
                counts,
                established_failures,
                worst_residual: worst,
            },
            reports,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }
}

/// Convenience for building ordered parameter maps.
pub fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}
