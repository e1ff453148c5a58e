//! The unitary representation of `M` and `Aut(M)` on `(C^{2k})^{⊗|I|}`.

pub mod algebra;
pub mod matrix;
pub mod meet;
pub mod pauli;
pub mod projections;

pub use algebra::{algebra_contains, commutant_dimension, span_closure, span_closure_in, SpanBasis};
pub use matrix::{kron, CMatrix, Tolerance, C64};
pub use meet::projection_meet;
pub use pauli::{
    at_factor, clock_matrix, fourier_h, modulus_fourier, primitive_root_conjugator,
    primitive_root_labeling, qft_matrix, shift_matrix,
};
pub use projections::{
    atom_basis_index, coatom_projections, matrix_units, perm_matrix, proj_atom, proj_coatom,
    proj_element, rho_at_index, rho_wreath,
};
