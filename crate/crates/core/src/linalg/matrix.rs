use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense column vector.
pub type Vector = DVector<f64>;

/// Dense real rectangular matrix with finite entries.
///
/// Constructors reject NaN/Inf. Arithmetic between finite matrices is not
/// re-checked; overflow to infinity is caught again by [`crate::linalg::pinv`]
/// and the spectrum routines.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix(DMatrix<f64>);

impl Matrix {
    /// Builds a matrix from row-major entries.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, entries))
    }

    /// Builds a matrix from a slice of equally sized rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if let Some(bad) = rows.iter().find(|r| r.as_ref().len() != cols) {
            return Err(Error::InvalidShape(format!(
                "ragged rows: expected {cols} columns, found {}",
                bad.as_ref().len()
            )));
        }
        let flat: Vec<f64> = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Self::from_row_slice(rows.len(), cols, &flat)
    }

    pub fn from_dmatrix(inner: DMatrix<f64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(Error::InvalidShape(format!(
                "dimensions must be positive, got {}x{}",
                inner.nrows(),
                inner.ncols()
            )));
        }
        let m = Matrix(inner);
        m.check_finite()?;
        Ok(m)
    }

    /// Column vector as an `n x 1` matrix.
    pub fn from_vector(v: &Vector) -> Result<Self> {
        Self::from_dmatrix(DMatrix::from_column_slice(v.len(), 1, v.as_slice()))
    }

    pub(crate) fn wrap(inner: DMatrix<f64>) -> Self {
        Matrix(inner)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Matrix(DMatrix::identity(n, n))
    }

    /// The all-ones matrix.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Matrix(DMatrix::from_element(rows, cols, 1.0))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<f64> {
        self.0
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<f64> {
        self.0.transpose().as_slice().to_vec()
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.0.row(i).iter().copied().collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix(self.0.transpose())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Matrix(&self.0 * factor)
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        &self.0 * v
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn min_entry(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest entrywise absolute difference; `None` when shapes differ.
    pub fn max_abs_diff(&self, other: &Matrix) -> Option<f64> {
        if self.shape() != other.shape() {
            return None;
        }
        Some(
            self.0
                .iter()
                .zip(other.0.iter())
                .fold(0.0, |acc, (a, b)| acc.max((a - b).abs())),
        )
    }

    /// Entrywise `max(self, 0)`.
    pub fn positive_part(&self) -> Self {
        Matrix(self.0.map(|x| x.max(0.0)))
    }

    pub fn check_finite(&self) -> Result<()> {
        for col in 0..self.cols() {
            for row in 0..self.rows() {
                if !self.0[(row, col)].is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        Ok(())
    }

    pub(crate) fn ensure_shape(&self, expected: (usize, usize)) -> Result<()> {
        if self.shape() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                found: self.shape(),
            });
        }
        Ok(())
    }

    /// Stacks `[[a, b], [c, d]]`; the caller guarantees compatible shapes.
    pub fn block2x2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Self {
        let (r0, c0) = a.shape();
        let (r1, c1) = d.shape();
        let mut out = DMatrix::zeros(r0 + r1, c0 + c1);
        out.view_mut((0, 0), (r0, c0)).copy_from(&a.0);
        out.view_mut((0, c0), (r0, c1)).copy_from(&b.0);
        out.view_mut((r0, 0), (r1, c0)).copy_from(&c.0);
        out.view_mut((r0, c0), (r1, c1)).copy_from(&d.0);
        Matrix(out)
    }

    /// Copy of the sub-block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        Matrix(self.0.view((row, col), (rows, cols)).into_owned())
    }
}

impl From<Matrix> for DMatrix<f64> {
    fn from(m: Matrix) -> Self {
        m.0
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Matrix> for &Matrix {
            type Output = Matrix;
            fn $method(self, rhs: &Matrix) -> Matrix {
                Matrix($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                Matrix($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: &Matrix) -> Matrix {
                Matrix($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Matrix> for &Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                Matrix($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix(-&self.0)
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix(-self.0)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|x| match f.precision() {
                    Some(p) => format!("{x:>w$.p$}", w = p + 6),
                    None => format!("{x:>12.6}"),
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Matrix", 3)?;
        st.serialize_field("rows", &self.rows())?;
        st.serialize_field("cols", &self.cols())?;
        st.serialize_field("data", &self.row_major())?;
        st.end()
    }
}
