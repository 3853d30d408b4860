//! Proper single and double splittings of rectangular real matrices.
//!
//! A splitting `A = U - V` is *proper* when `U` has the same range and null
//! space as `A`; the iteration `x <- U^+ V x + U^+ b` then converges to the
//! minimum-norm least-squares solution `A^+ b` exactly when `rho(U^+ V) < 1`.
//! A proper double splitting `A = P - R + S` drives the two-step scheme
//!
//! ```text
//! x[k+1] = P^+ R x[k] - P^+ S x[k-1] + P^+ b
//! ```
//!
//! whose convergence is governed by the block companion matrix
//! `W = [[P^+ R, -P^+ S], [I, 0]]`.
//!
//! The crate validates and classifies such splittings, runs both iterations,
//! and checks the hypotheses and conclusions of spectral-radius comparison
//! theorems for pairs of double splittings of a semi-monotone matrix
//! (`A^+ >= 0`).

pub mod comparison;
pub mod double;
pub mod error;
pub mod generate;
pub mod linalg;
pub mod matrix_file;
pub mod solver;
pub mod splitting;

pub use error::{Error, Result};
pub use linalg::{Matrix, ToleranceConfig, Vector};
