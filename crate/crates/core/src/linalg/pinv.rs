//! Moore-Penrose pseudoinverse and related rank utilities.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{Matrix, ToleranceConfig};
use crate::error::{Error, Result};

struct Svd {
    u: DMatrix<f64>,
    singular_values: DVector<f64>,
    v_t: DMatrix<f64>,
}

/// Thin SVD computed by faer.
///
/// nalgebra's own SVD returns inconsistent factors for some rank-deficient
/// inputs, so it is not used here.
fn svd(a: &Matrix) -> Result<Svd> {
    a.check_finite()?;
    let m = a.as_dmatrix();
    let fm = faer::Mat::<f64>::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
    let dec = fm
        .thin_svd()
        .map_err(|_| Error::DecompositionFailure("singular value decomposition"))?;
    let (u, s, v) = (dec.U(), dec.S().column_vector(), dec.V());
    let k = s.nrows();
    Ok(Svd {
        u: DMatrix::from_fn(u.nrows(), k, |i, j| u[(i, j)]),
        singular_values: DVector::from_fn(k, |i, _| s[i]),
        v_t: DMatrix::from_fn(k, v.nrows(), |i, j| v[(j, i)]),
    })
}

/// Numerical rank: singular values at or below `rank_rel_cutoff * sigma_max` count as zero.
pub fn rank(a: &Matrix, cfg: &ToleranceConfig) -> Result<usize> {
    let dec = svd(a)?;
    let smax = dec.singular_values.max();
    if smax == 0.0 {
        return Ok(0);
    }
    let cut = cfg.rank_cutoff_for(a.rows(), a.cols()) * smax;
    Ok(dec.singular_values.iter().filter(|&&s| s > cut).count())
}

/// Moore-Penrose pseudoinverse `X` (shape `cols x rows`) via the SVD.
///
/// Singular values at or below `rank_rel_cutoff * sigma_max` are discarded, so
/// the zero matrix maps to the zero matrix of transposed shape.
pub fn pinv(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let (m, n) = a.shape();
    let dec = svd(a)?;
    let smax = dec.singular_values.max();
    if smax == 0.0 {
        return Ok(Matrix::zeros(n, m));
    }
    let cut = cfg.rank_cutoff_for(m, n) * smax;
    let (u, v_t) = (&dec.u, &dec.v_t);

    let mut x = DMatrix::zeros(n, m);
    for (k, &s) in dec.singular_values.iter().enumerate() {
        if s > cut {
            // x += v_k u_k^T / s
            x.ger(1.0 / s, &v_t.row(k).transpose(), &u.column(k), 1.0);
        }
    }
    let x = Matrix::wrap(x);
    x.check_finite()?;
    Ok(x)
}

/// Ordinary inverse of a square matrix, rejecting numerically rank-deficient input.
pub fn inverse(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::NotInvertible(format!(
            "{}x{} matrix is not square",
            a.rows(),
            a.cols()
        )));
    }
    let r = rank(a, cfg)?;
    if r < a.rows() {
        return Err(Error::NotInvertible(format!(
            "numerical rank {r} < {}",
            a.rows()
        )));
    }
    let inv = a
        .as_dmatrix()
        .clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::NotInvertible("LU factorization is singular".into()))?;
    Matrix::from_dmatrix(inv)
}

/// Max-abs residuals of the four Penrose equations for a candidate `X`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PenroseResiduals {
    pub axa_minus_a: f64,
    pub xax_minus_x: f64,
    pub ax_symmetry: f64,
    pub xa_symmetry: f64,
}

impl PenroseResiduals {
    pub fn max(&self) -> f64 {
        self.axa_minus_a
            .max(self.xax_minus_x)
            .max(self.ax_symmetry)
            .max(self.xa_symmetry)
    }
}

pub fn penrose_residuals(a: &Matrix, x: &Matrix) -> PenroseResiduals {
    let ax = a * x;
    let xa = x * a;
    let diff = |p: &Matrix, q: &Matrix| p.max_abs_diff(q).expect("shapes agree");
    PenroseResiduals {
        axa_minus_a: diff(&(&ax * a), a),
        xax_minus_x: diff(&(&xa * x), x),
        ax_symmetry: diff(&ax.transpose(), &ax),
        xa_symmetry: diff(&xa.transpose(), &xa),
    }
}
