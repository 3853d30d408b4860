use serde::Serialize;

use crate::error::{Error, Result};

/// Numerical thresholds shared by every predicate and iteration in the crate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ToleranceConfig {
    /// Absolute slack for entrywise `>= 0` tests.
    pub nonneg_slack: f64,
    /// Relative singular-value cutoff. `None` selects `max(m, n) * f64::EPSILON`
    /// for each matrix.
    pub rank_rel_cutoff: Option<f64>,
    /// Entrywise tolerance for matrix equalities.
    pub eq_abs_tol: f64,
    /// Stopping tolerance for eigen-iterations and the slack on spectral-radius comparisons.
    pub spectral_tol: f64,
    /// Step-size tolerance for the stationary iterations.
    pub solve_tol: f64,
    pub max_iter: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            nonneg_slack: 1e-10,
            rank_rel_cutoff: None,
            eq_abs_tol: 1e-10,
            spectral_tol: 1e-10,
            solve_tol: 1e-10,
            max_iter: 10_000,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let nonneg = [
            ("nonneg_slack", self.nonneg_slack),
            ("eq_abs_tol", self.eq_abs_tol),
            ("spectral_tol", self.spectral_tol),
            ("solve_tol", self.solve_tol),
        ];
        for (name, value) in nonneg {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be a finite value >= 0, got {value}"
                )));
            }
        }
        if let Some(c) = self.rank_rel_cutoff {
            if !(c > 0.0 && c < 1.0) {
                return Err(Error::InvalidTolerance(format!(
                    "rank_rel_cutoff must lie in (0, 1), got {c}"
                )));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidTolerance("max_iter must be positive".into()));
        }
        Ok(())
    }

    /// Relative singular-value cutoff applied to an `rows x cols` matrix.
    pub fn rank_cutoff_for(&self, rows: usize, cols: usize) -> f64 {
        self.rank_rel_cutoff
            .unwrap_or_else(|| rows.max(cols) as f64 * f64::EPSILON)
    }
}
