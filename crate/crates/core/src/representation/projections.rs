//! Lattice elements as projections on `H = (C^{2k})^{⊗|I|}`, the permutation
//! representation of `Aut(M)`, and matrix units at one index.
//!
//! The standard basis of `H` is indexed by atoms through
//! [`Mcl::atom_index`]: basis vector `b` is the atom whose base-`2k` digits,
//! most significant first, are `a_i - 1`.

use crate::error::{Error, Result};
use crate::groups::{Perm, WreathElement};
use crate::lattice::{Entry, Mcl, MclElement};
use crate::representation::matrix::{kron, CMatrix, C64};
use crate::representation::pauli::at_factor;

pub fn atom_basis_index(mcl: &Mcl, a: &MclElement) -> Result<usize> {
    mcl.atom_index(a)
}

/// Permutation matrix with `P e_s = e_{p(s)}`.
pub fn perm_matrix(p: &Perm) -> CMatrix {
    let n = p.len();
    CMatrix::from_fn(n, n, |r, c| {
        if p.apply(c) == r {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn rank_one(d: usize, k: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |r, c| {
        if r == k && c == k {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Projection onto the span of the atoms below `m`: `⊗_i p_i` with
/// `p_i = I_{2k}` where `m_i = X` and the rank-one `p_{m_i}` otherwise.
/// The bottom maps to zero.
pub fn proj_element(mcl: &Mcl, m: &MclElement) -> Result<CMatrix> {
    if m.modulus() != mcl.modulus() || m.len() != mcl.indices() {
        return Err(Error::ShapeMismatch(format!("{m} is not in this lattice")));
    }
    let d = mcl.modulus().two_k();
    if m.is_bottom() {
        let n = mcl.atom_count()? as usize;
        return Ok(CMatrix::zeros(n, n));
    }
    let factors: Vec<CMatrix> = m
        .entries()
        .iter()
        .map(|e| match e {
            Entry::X => CMatrix::identity(d),
            Entry::Val(v) => rank_one(d, *v as usize - 1),
        })
        .collect();
    kron(&factors)
}

pub fn proj_atom(mcl: &Mcl, a: &MclElement) -> Result<CMatrix> {
    if !a.is_atom() {
        return Err(Error::Precondition(format!("{a} is not an atom")));
    }
    proj_element(mcl, a)
}

pub fn proj_coatom(mcl: &Mcl, c: &MclElement) -> Result<CMatrix> {
    if !c.is_coatom() {
        return Err(Error::Precondition(format!("{c} is not a coatom")));
    }
    proj_element(mcl, c)
}

/// Coatom projections in the order of [`Mcl::coatoms`].
pub fn coatom_projections(mcl: &Mcl) -> Result<Vec<CMatrix>> {
    mcl.coatoms()?
        .iter()
        .map(|c| proj_coatom(mcl, c))
        .collect()
}

/// `ρ(w)`: the permutation matrix sending the basis vector of atom `a` to
/// that of `w·a`.
pub fn rho_wreath(w: &WreathElement, mcl: &Mcl) -> Result<CMatrix> {
    let p = crate::groups::atom_action(w, mcl)?;
    Ok(perm_matrix(&p))
}

/// `I ⊗ .. ⊗ P_p ⊗ .. ⊗ I` with the permutation matrix of `p` at factor `i`.
pub fn rho_at_index(p: &Perm, i: usize, mcl: &Mcl) -> Result<CMatrix> {
    if p.len() != mcl.modulus().two_k() {
        return Err(Error::ShapeMismatch(format!(
            "permutation on {} symbols for {}",
            p.len(),
            mcl.modulus()
        )));
    }
    at_factor(&perm_matrix(p), i, mcl.indices())
}

/// Matrix units `e[i][j]` (0-based) at index `alpha`: `e_ii` is the
/// projection of the coatom fixing `alpha` to `i+1`, and
/// `e_ij = e_ii · ρ_alpha((i j))`.
pub fn matrix_units(alpha: usize, mcl: &Mcl) -> Result<Vec<Vec<CMatrix>>> {
    let d = mcl.modulus().two_k();
    let diag = (0..d)
        .map(|i| proj_coatom(mcl, &mcl.coatom(alpha, i as u64 + 1)?))
        .collect::<Result<Vec<_>>>()?;
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let t = Perm::transposition(d, i, j)?;
                    Ok(&diag[i] * &rho_at_index(&t, alpha, mcl)?)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::pauli::shift_matrix;
    use crate::ring::Modulus;

    fn mcl(n: u64, i: usize) -> Mcl {
        Mcl::new(Modulus::new(n).unwrap(), i).unwrap()
    }

    fn el(n: u64, s: &str) -> MclElement {
        MclElement::parse(Modulus::new(n).unwrap(), s).unwrap()
    }

    #[test]
    fn atom_projection_is_rank_one_at_its_index() {
        let l = mcl(5, 2);
        for a in l.atoms().unwrap() {
            let p = proj_atom(&l, &a).unwrap();
            let k = atom_basis_index(&l, &a).unwrap();
            assert_eq!(p.trace(), C64::new(1.0, 0.0));
            assert_eq!(p.get(k, k), C64::new(1.0, 0.0));
        }
        assert!(proj_atom(&l, &el(5, "(1,X)")).is_err());
    }

    #[test]
    fn coatom_projection_structure() {
        let l = mcl(5, 2);
        let p = proj_coatom(&l, &el(5, "(1,X)")).unwrap();
        let expected = kron(&[rank_one(4, 0), CMatrix::identity(4)]).unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.trace(), C64::new(4.0, 0.0));
        assert!(p.is_projection(1e-12));
        assert!(proj_coatom(&l, &el(5, "(1,2)")).is_err());
    }

    #[test]
    fn coatoms_at_one_index_resolve_identity() {
        let l = mcl(5, 2);
        for i in 0..2 {
            let mut sum = CMatrix::zeros(16, 16);
            for v in 1..=4 {
                sum = sum.add(&proj_coatom(&l, &l.coatom(i, v).unwrap()).unwrap()).unwrap();
            }
            assert_eq!(sum, CMatrix::identity(16));
        }
    }

    #[test]
    fn rho_at_index_of_the_cycle_is_the_inverse_shift() {
        let l = mcl(5, 1);
        let cycle = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let x = shift_matrix(4).unwrap();
        assert_eq!(rho_at_index(&cycle, 0, &l).unwrap(), x.adjoint());
        assert_eq!(rho_at_index(&cycle.inverse(), 0, &l).unwrap(), x);
        assert_eq!(
            rho_at_index(&Perm::identity(4), 0, &l).unwrap(),
            CMatrix::identity(4)
        );
        assert!(rho_at_index(&Perm::identity(4), 1, &l).is_err());
    }

    #[test]
    fn rho_at_distinct_indices_commute() {
        let l = mcl(5, 2);
        let a = rho_at_index(&Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(), 0, &l).unwrap();
        let b = rho_at_index(&Perm::transposition(4, 1, 2).unwrap(), 1, &l).unwrap();
        assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn rho_of_identity_is_identity() {
        let l = mcl(5, 2);
        let w = WreathElement::identity(4, 2);
        assert_eq!(rho_wreath(&w, &l).unwrap(), CMatrix::identity(16));
    }

    #[test]
    fn matrix_unit_relations_small() {
        let l = mcl(5, 2);
        let e = matrix_units(1, &l).unwrap();
        assert!((&e[0][1] * &e[1][2]).distance(&e[0][2]) < 1e-12);
        assert_eq!(e[0][1].adjoint(), e[1][0]);
        let l1 = mcl(5, 1);
        let e = matrix_units(0, &l1).unwrap();
        let mut sum = CMatrix::zeros(4, 4);
        for (i, row) in e.iter().enumerate() {
            sum = sum.add(&row[i]).unwrap();
        }
        assert_eq!(sum, CMatrix::identity(4));
        assert!(matrix_units(1, &l1).is_err());
    }

    #[test]
    fn bottom_maps_to_zero() {
        let l = mcl(3, 2);
        assert_eq!(proj_element(&l, &l.bottom()).unwrap(), CMatrix::zeros(4, 4));
        assert_eq!(proj_element(&l, &l.top()).unwrap(), CMatrix::identity(4));
    }
}
