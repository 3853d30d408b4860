//! Eigenvalues, spectral radius and the Perron vector of nonnegative matrices.

use nalgebra::linalg::Schur;
use nalgebra::{Complex, DMatrix, DVector};
use serde::Serialize;

use super::{is_nonneg, Matrix, ToleranceConfig, Vector};
use crate::error::{Error, Result};

/// Eigenvalues of a square matrix together with its spectral radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    #[serde(serialize_with = "serialize_complex")]
    pub eigenvalues: Vec<Complex<f64>>,
    pub spectral_radius: f64,
    /// Nonnegative eigenvector for the spectral radius, normalized to unit
    /// max-entry. Present only when the matrix is entrywise nonnegative.
    pub dominant_vector: Option<Vec<f64>>,
}

fn serialize_complex<S: serde::Serializer>(
    values: &[Complex<f64>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for z in values {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

fn check_square(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    m.check_finite()
}

/// All eigenvalues via Hessenberg reduction and shifted QR (real Schur form).
pub fn eigenvalues(m: &Matrix, cfg: &ToleranceConfig) -> Result<Spectrum> {
    let eigenvalues = complex_eigenvalues(m, cfg)?;
    let spectral_radius = eigenvalues.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()));
    let dominant_vector = if is_nonneg(m, cfg) {
        Some(perron_vector(m, spectral_radius, cfg)?.as_slice().to_vec())
    } else {
        None
    };
    Ok(Spectrum {
        eigenvalues,
        spectral_radius,
        dominant_vector,
    })
}

fn complex_eigenvalues(m: &Matrix, cfg: &ToleranceConfig) -> Result<Vec<Complex<f64>>> {
    check_square(m)?;
    // The Schur iteration budget counts QR sweeps over the whole matrix; give it
    // at least a few hundred per eigenvalue.
    let budget = cfg.max_iter.max(300 * m.rows());
    let schur = Schur::try_new(m.as_dmatrix().clone(), f64::EPSILON, budget)
        .ok_or(Error::DecompositionFailure("Schur decomposition"))?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Maximum modulus over all eigenvalues.
pub fn spectral_radius(m: &Matrix, cfg: &ToleranceConfig) -> Result<f64> {
    Ok(complex_eigenvalues(m, cfg)?
        .iter()
        .fold(0.0_f64, |acc, z| acc.max(z.norm())))
}

/// Shifted inverse iteration from a positive start vector.
///
/// For `sigma > rho(M)` the resolvent `(sigma I - M)^{-1}` is a nonnegative
/// Neumann series, so iterates stay in the nonnegative orthant and converge
/// into the Perron eigenspace.
fn perron_vector(m: &Matrix, rho: f64, cfg: &ToleranceConfig) -> Result<Vector> {
    let n = m.rows();
    let a = m.as_dmatrix();
    let scale = a.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return Ok(DVector::from_element(n, 1.0));
    }

    let mut shift = 1e-10 * scale.max(rho);
    let lu = loop {
        let shifted = DMatrix::identity(n, n) * (rho + shift) - a;
        let lu = shifted.lu();
        if lu.is_invertible() {
            break lu;
        }
        shift *= 10.0;
    };

    let mut v = DVector::from_element(n, 1.0);
    let sweeps = cfg.max_iter.min(500);
    for _ in 0..sweeps {
        let mut next = lu
            .solve(&v)
            .ok_or(Error::DecompositionFailure("Perron vector iteration"))?;
        normalize_max_entry(&mut next);
        let change = (&next - &v).amax();
        v = next;
        let residual = (a * &v - &v * rho).norm();
        if residual <= cfg.spectral_tol * v.norm() || change <= f64::EPSILON {
            break;
        }
    }
    Ok(v)
}

fn normalize_max_entry(v: &mut Vector) {
    let (idx, _) =
        v.iter().enumerate().fold(
            (0, 0.0),
            |(bi, bv), (i, x)| if x.abs() > bv { (i, x.abs()) } else { (bi, bv) },
        );
    let pivot = v[idx];
    if pivot != 0.0 {
        *v /= pivot;
    }
}
