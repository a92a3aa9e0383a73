//! Numerical tolerances shared by the series algebra, the class checks and the oracle.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Smallest admissible |b[0]| for series division.
    pub unit: f64,
    /// Allowed mismatch between a target's declared coefficients and its series.
    pub series_consistency: f64,
    /// Slack on the Schwarz tripwire |w(z)| <= |z|.
    pub schwarz: f64,
    /// Slack on |zeta| <= 1 for Caratheodory parameters.
    pub disk: f64,
    /// An empirical supremum above the bound by more than this is a violation.
    pub validity: f64,
    /// A bound is reported sharp when the empirical supremum is within this.
    pub sharpness: f64,
    /// Agreement threshold for cross-checks between two algebraic routes.
    pub agreement: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit: 1e-12,
            series_consistency: 1e-10,
            schwarz: 1e-9,
            disk: 1e-12,
            validity: 1e-9,
            sharpness: 5e-3,
            agreement: 1e-10,
        }
    }
}

/// Default truncation order for every series computation.
pub const DEFAULT_ORDER: usize = 8;
