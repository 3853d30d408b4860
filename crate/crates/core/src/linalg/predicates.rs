//! Tolerance-aware entrywise predicates and orthogonal projectors.

use super::{pinv, Matrix, ToleranceConfig};
use crate::error::{Error, Result};

/// Every entry is `>= -nonneg_slack`.
pub fn is_nonneg(m: &Matrix, cfg: &ToleranceConfig) -> bool {
    m.min_entry() >= -cfg.nonneg_slack
}

/// Magnitude of the most negative entry, or zero.
pub fn nonneg_violation(m: &Matrix) -> f64 {
    (-m.min_entry()).max(0.0)
}

/// Entrywise `ma >= mb`, i.e. `ma - mb >= 0` within slack.
pub fn geq(ma: &Matrix, mb: &Matrix, cfg: &ToleranceConfig) -> Result<bool> {
    Ok(is_nonneg(&difference(ma, mb)?, cfg))
}

fn difference(ma: &Matrix, mb: &Matrix) -> Result<Matrix> {
    mb.ensure_shape(ma.shape())
        .map_err(|_| Error::ShapeMismatch {
            expected: ma.shape(),
            found: mb.shape(),
        })?;
    Ok(ma - mb)
}

/// Some row has all entries within `nonneg_slack` of zero.
pub fn has_zero_row(m: &Matrix, cfg: &ToleranceConfig) -> bool {
    min_row_magnitude(m) <= cfg.nonneg_slack
}

/// Smallest per-row max-abs entry.
pub fn min_row_magnitude(m: &Matrix) -> f64 {
    (0..m.rows())
        .map(|i| m.row(i).iter().fold(0.0_f64, |acc, x| acc.max(x.abs())))
        .fold(f64::INFINITY, f64::min)
}

/// Orthogonal projector `A A^+` onto the range of `A`.
pub fn range_projector(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    Ok(a * pinv(a, cfg)?)
}

/// Orthogonal projector `I - A^+ A` onto the null space of `A`.
pub fn nullspace_projector(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    Ok(Matrix::identity(a.cols()) - pinv(a, cfg)? * a)
}
