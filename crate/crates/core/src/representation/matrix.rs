use std::fmt::Write as _;
use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Numerical threshold for rank and closeness decisions.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    /// Span and commutant rank decisions.
    pub const SPAN: Tolerance = Tolerance(1e-9);
    /// Comparisons of matrices that are exact up to rounding.
    pub const EXACT: Tolerance = Tolerance(1e-12);

    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1e-3) {
            return Err(Error::Precondition(format!(
                "tolerance must lie in (0, 1e-3), got {eps}"
            )));
        }
        Ok(Tolerance(eps))
    }

    #[inline]
    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::SPAN
    }
}

/// Dense complex matrix in double precision.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix(DMatrix<C64>);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        CMatrix(DMatrix::identity(n, n))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        CMatrix(DMatrix::from_fn(rows, cols, f))
    }

    /// From row-major nested rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(CMatrix::from_fn(r, c, |i, j| rows[i][j]))
    }

    /// Diagonal matrix.
    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        CMatrix::from_fn(n, n, |i, j| if i == j { values[i] } else { C64::new(0.0, 0.0) })
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols() != other.rows() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(CMatrix(&self.0 * &other.0))
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.same_shape(other)?;
        Ok(CMatrix(&self.0 + &other.0))
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.same_shape(other)?;
        Ok(CMatrix(&self.0 - &other.0))
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix(&self.0 * s)
    }

    fn same_shape(&self, other: &CMatrix) -> Result<()> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(())
    }

    /// `‖self - other‖_F`, or infinity on a shape mismatch.
    pub fn distance(&self, other: &CMatrix) -> f64 {
        self.sub(other).map_or(f64::INFINITY, |d| d.frobenius_norm())
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.distance(other) < tol
    }

    /// `‖M*M - I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.0.adjoint() * &self.0 - DMatrix::identity(self.rows(), self.rows()))
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Hermitian and idempotent within `tol` (Frobenius).
    pub fn is_projection(&self, tol: f64) -> bool {
        self.is_square()
            && self.approx_eq(&self.adjoint(), tol)
            && CMatrix(&self.0 * &self.0).approx_eq(self, tol)
    }

    /// Frobenius inner product `trace(self* other)`.
    pub fn frobenius_inner(&self, other: &CMatrix) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// JSON in the `{"rows", "cols", "data": [[[re, im], ..], ..]}` format,
    /// every number printed with 17 significant digits. Negative zeros are
    /// written as zero so the output depends only on the values.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        write!(s, "{{\"rows\":{},\"cols\":{},\"data\":[", self.rows(), self.cols()).unwrap();
        for i in 0..self.rows() {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for j in 0..self.cols() {
                if j > 0 {
                    s.push(',');
                }
                let z = self.get(i, j);
                write!(s, "[{},{}]", fmt17(z.re), fmt17(z.im)).unwrap();
            }
            s.push(']');
        }
        s.push_str("]}");
        s
    }

    pub fn from_json(text: &str) -> Result<CMatrix> {
        #[derive(Deserialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            data: Vec<Vec<[f64; 2]>>,
        }
        let r: Repr = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        if r.data.len() != r.rows || r.data.iter().any(|row| row.len() != r.cols) {
            return Err(Error::Json(format!(
                "data does not match declared shape {}x{}",
                r.rows, r.cols
            )));
        }
        if r.data.iter().flatten().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Json("non-finite entry".into()));
        }
        Ok(CMatrix::from_fn(r.rows, r.cols, |i, j| {
            C64::new(r.data[i][j][0], r.data[i][j][1])
        }))
    }
}

fn fmt17(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

impl From<DMatrix<C64>> for CMatrix {
    fn from(m: DMatrix<C64>) -> Self {
        CMatrix(m)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    /// Panics on a shape mismatch; see [`CMatrix::matmul`].
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs).expect("matrix shapes")
    }
}

/// Kronecker product, index 0 leftmost (most significant).
pub fn kron(mats: &[CMatrix]) -> Result<CMatrix> {
    let (first, rest) = mats
        .split_first()
        .ok_or_else(|| Error::Precondition("kron of an empty list".into()))?;
    Ok(rest
        .iter()
        .fold(first.clone(), |acc, m| CMatrix(acc.0.kronecker(&m.0))))
}
