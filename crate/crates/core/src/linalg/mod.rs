//! Dense real matrix kernel: pseudoinverse, spectra, projectors and
//! tolerance-aware entrywise predicates.

mod matrix;
mod pinv;
mod predicates;
mod spectrum;
mod tolerance;

pub use matrix::{Matrix, Vector};
pub use pinv::{inverse, penrose_residuals, pinv, rank, PenroseResiduals};
pub use predicates::{
    geq, has_zero_row, is_nonneg, min_row_magnitude, nonneg_violation, nullspace_projector,
    range_projector,
};
pub use spectrum::{eigenvalues, spectral_radius, Spectrum};
pub use tolerance::ToleranceConfig;
