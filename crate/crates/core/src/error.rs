use thiserror::Error;

/// Errors raised by matrix construction, decompositions and splitting validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid matrix shape: {0}")]
    InvalidShape(String),

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("{0} did not converge within the iteration limit")]
    DecompositionFailure(&'static str),

    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),

    /// The candidate splitting matrix does not share range and null space with `A`.
    /// Residuals are max-abs differences of the corresponding orthogonal projectors.
    #[error(
        "splitting is not proper: range residual {range_residual:.3e}, null-space residual {null_residual:.3e}"
    )]
    NotProper {
        range_residual: f64,
        null_residual: f64,
    },

    #[error("A != P - R + S (max abs residual {residual:.3e})")]
    DecompositionMismatch { residual: f64 },

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("the two splittings are of different matrices (max abs difference {difference:.3e})")]
    DifferentA { difference: f64 },

    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
