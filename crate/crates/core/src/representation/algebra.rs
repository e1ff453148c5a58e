//! Finite-dimensional `*`-algebras generated by matrices.
//!
//! In `M_n` a unital `*`-subalgebra is already weakly closed, so the
//! generated von Neumann algebra is the linear span of all words in the
//! generators and their adjoints. [`span_closure`] builds an orthonormal
//! (Frobenius) basis of that span.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::representation::matrix::{CMatrix, Tolerance, C64};

/// Largest accepted basis size (`n²` for `M_n`).
pub const SPAN_BUDGET: usize = 100_000;

/// Largest ambient size accepted by [`commutant_dimension`].
pub const MAX_COMMUTANT_DIM: usize = 32;

/// Orthonormal basis of a subspace of `M_dim`, stored as flattened
/// (column-major) vectors.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    dim: usize,
    basis: Vec<DVector<C64>>,
}

impl SpanBasis {
    pub fn empty(dim: usize) -> Self {
        SpanBasis {
            dim,
            basis: Vec::new(),
        }
    }

    /// Ambient matrix size `n` (the span lives in `M_n`).
    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Dimension of the span.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> Vec<CMatrix> {
        self.basis
            .iter()
            .map(|v| CMatrix::from(DMatrix::from_column_slice(self.dim, self.dim, v.as_slice())))
            .collect()
    }

    /// Largest `|⟨b_i, b_j⟩ - δ_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let delta = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.dotc(b) - C64::new(delta, 0.0)).norm());
            }
        }
        worst
    }

    /// Gram–Schmidt `v` against the basis (two passes); returns the residual.
    fn residual(&self, mut v: DVector<C64>) -> DVector<C64> {
        for _ in 0..2 {
            for b in &self.basis {
                let c = b.dotc(&v);
                v.axpy(-c, b, C64::new(1.0, 0.0));
            }
        }
        v
    }

    /// Add `m` if its residual against the span is at least
    /// `threshold · max(1, ‖m‖_F)`. The floor of 1 keeps numerically zero
    /// products (norm near machine epsilon) out of the basis.
    /// Returns whether it was added.
    fn try_add(&mut self, m: &CMatrix, threshold: f64) -> bool {
        if self.basis.len() == self.dim * self.dim {
            return false;
        }
        let v = flatten(m);
        let norm = v.norm();
        let r = self.residual(v);
        let rn = r.norm();
        if rn < threshold * norm.max(1.0) {
            return false;
        }
        self.basis.push(r / C64::new(rn, 0.0));
        true
    }

    /// `‖m - proj(m)‖_F < tol·‖m‖_F`.
    pub fn contains(&self, m: &CMatrix, tol: Tolerance) -> Result<bool> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix against a span in M_{}",
                m.rows(),
                m.cols(),
                self.dim
            )));
        }
        let v = flatten(m);
        let norm = v.norm();
        Ok(self.residual(v).norm() <= tol.eps() * norm)
    }

    /// Every basis element of `other` lies in `self`.
    pub fn contains_span(&self, other: &SpanBasis, tol: Tolerance) -> Result<bool> {
        for b in other.basis() {
            if !self.contains(&b, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn flatten(m: &CMatrix) -> DVector<C64> {
    DVector::from_column_slice(m.inner().as_slice())
}

/// Orthonormal basis of the unital `*`-algebra generated by `gens`.
///
/// Seeds the basis with the identity and then the generators in order, and
/// left-multiplies each basis element, in insertion order, by every
/// generator and every non-Hermitian generator's adjoint until nothing new
/// appears. A candidate is orthogonalized and discarded when the residual
/// norm is below `tol · n · max(1, ‖candidate‖_F)`.
pub fn span_closure(gens: &[CMatrix], tol: Tolerance) -> Result<SpanBasis> {
    let n = match gens.first() {
        Some(g) => g.rows(),
        None => {
            return Err(Error::Precondition(
                "span closure needs at least one generator".into(),
            ))
        }
    };
    span_closure_in(n, gens, tol)
}

/// [`span_closure`] with an explicit ambient size, allowing an empty
/// generator list (the result is then `C·I`).
pub fn span_closure_in(n: usize, gens: &[CMatrix], tol: Tolerance) -> Result<SpanBasis> {
    if let Some(g) = gens.iter().find(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::ShapeMismatch(format!(
            "generator {}x{} in M_{n}",
            g.rows(),
            g.cols()
        )));
    }
    if n * n > SPAN_BUDGET {
        return Err(Error::BudgetExceeded {
            requested: (n * n) as u128,
            budget: SPAN_BUDGET as u128,
        });
    }
    let threshold = tol.eps() * n as f64;
    let mut multipliers: Vec<CMatrix> = gens.to_vec();
    for g in gens {
        let adj = g.adjoint();
        if !adj.approx_eq(g, tol.eps()) {
            multipliers.push(adj);
        }
    }

    let mut span = SpanBasis::empty(n);
    span.try_add(&CMatrix::identity(n), threshold);
    for g in &multipliers {
        span.try_add(g, threshold);
    }
    let mut next = 0;
    while next < span.basis.len() && span.basis.len() < n * n {
        let b = CMatrix::from(DMatrix::from_column_slice(n, n, span.basis[next].as_slice()));
        for g in &multipliers {
            span.try_add(&(g * &b), threshold);
        }
        next += 1;
    }
    Ok(span)
}

pub fn algebra_contains(b: &SpanBasis, m: &CMatrix, tol: Tolerance) -> Result<bool> {
    b.contains(m, tol)
}

/// `dim {Y : Yg = gY for all g}`, the nullity of the stacked commutator maps
/// `Y ↦ Yg - gY`, with singular values below `tol · max(1, σ_max)` counted
/// as zero.
pub fn commutant_dimension(gens: &[CMatrix], tol: Tolerance) -> Result<usize> {
    let n = match gens.first() {
        Some(g) => g.rows(),
        None => return Err(Error::Precondition("no generators".into())),
    };
    if n > MAX_COMMUTANT_DIM {
        return Err(Error::BudgetExceeded {
            requested: n as u128,
            budget: MAX_COMMUTANT_DIM as u128,
        });
    }
    if let Some(g) = gens.iter().find(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::ShapeMismatch(format!(
            "generator {}x{} in M_{n}",
            g.rows(),
            g.cols()
        )));
    }
    let nn = n * n;
    let mut stacked = DMatrix::<C64>::zeros(gens.len() * nn, nn);
    for (k, g) in gens.iter().enumerate() {
        let g = g.inner();
        // column-major vec: vec(Yg) = (gᵀ ⊗ I) vec(Y), vec(gY) = (I ⊗ g) vec(Y)
        for c in 0..n {
            for r in 0..n {
                let col = c * n + r; // Y = E_{rc}
                for j in 0..n {
                    // (E_rc g)_{r j} = g_{c j}
                    stacked[(k * nn + j * n + r, col)] += g[(c, j)];
                }
                for i in 0..n {
                    // (g E_rc)_{i c} = g_{i r}
                    stacked[(k * nn + c * n + i, col)] -= g[(i, r)];
                }
            }
        }
    }
    let sv = stacked.singular_values();
    let max = sv.iter().copied().fold(0.0f64, f64::max);
    let cutoff = tol.eps() * max.max(1.0);
    let rank = sv.iter().filter(|&&s| s > cutoff).count();
    Ok(nn - rank)
}
