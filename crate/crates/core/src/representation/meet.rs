use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::representation::matrix::{CMatrix, C64};

/// Input projections must be Hermitian idempotents to this accuracy.
pub const PROJECTION_TOL: f64 = 1e-9;

/// Eigenvalues of `pqp` within this distance of 1 belong to the meet.
pub const EIGENVALUE_ONE_TOL: f64 = 1e-6;

/// Orthogonal projection onto `range(p) ∩ range(q)`, the strong limit of
/// `(pqp)^n`: the spectral projection of `pqp` at eigenvalue 1.
pub fn projection_meet(p: &CMatrix, q: &CMatrix) -> Result<CMatrix> {
    for (name, m) in [("p", p), ("q", q)] {
        if !m.is_projection(PROJECTION_TOL) {
            return Err(Error::Precondition(format!("{name} is not a projection")));
        }
    }
    if p.rows() != q.rows() {
        return Err(Error::ShapeMismatch(format!(
            "projections of size {} and {}",
            p.rows(),
            q.rows()
        )));
    }
    let pqp = &(p * q) * p;
    let h = (pqp.inner() + pqp.inner().adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let n = p.rows();
    let mut out = DMatrix::<C64>::zeros(n, n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if (lambda - 1.0).abs() < EIGENVALUE_ONE_TOL {
            let v = eig.eigenvectors.column(k);
            out += v * v.adjoint();
        }
    }
    Ok(CMatrix::from(out))
}
