//! Generalized Pauli matrices: the shift `X_d`, the clock `D_d` and the
//! quantum Fourier transform `U_d` with `U_d* X_d U_d = D_d`.
//!
//! For `d = 4`:
//!
//! ```text
//!        1 [ 1  1  1  1 ]        [ 0 1 0 0 ]        [ 1 0  0  0 ]
//! U_4 =  - [ 1  i -1 -i ]  X_4 = [ 0 0 1 0 ]  D_4 = [ 0 i  0  0 ]
//!        2 [ 1 -1  1 -1 ]        [ 0 0 0 1 ]        [ 0 0 -1  0 ]
//!          [ 1 -i -1  i ]        [ 1 0 0 0 ]        [ 0 0  0 -i ]
//! ```
//!
//! Also here: the unit-group relabelings and the per-modulus Fourier
//! transform that diagonalizes the centralizer action on one tensor factor.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::groups::{base_centralizer, Perm};
use crate::representation::matrix::{kron, CMatrix, C64};
use crate::representation::projections::perm_matrix;
use crate::ring::{primitive_root, Modulus};
use crate::lattice::Mcl;

fn check_dim(d: usize) -> Result<()> {
    if d < 2 || d % 2 == 1 {
        return Err(Error::Precondition(format!(
            "qudit dimension must be even and at least 2, got {d}"
        )));
    }
    Ok(())
}

/// `exp(2πi j / d)`, exact at quarter turns.
pub fn root_of_unity(j: usize, d: usize) -> C64 {
    let j = j % d;
    if (4 * j).is_multiple_of(d) {
        return match 4 * j / d {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * PI * j as f64 / d as f64;
    C64::new(theta.cos(), theta.sin())
}

/// Ones at `(i, i+1 mod d)`.
pub fn shift_matrix(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    Ok(CMatrix::from_fn(d, d, |i, j| {
        if j == (i + 1) % d {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// `diag(ω^0, .., ω^{d-1})`, the roots of unity counterclockwise from 1.
pub fn clock_matrix(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    let diag: Vec<C64> = (0..d).map(|j| root_of_unity(j, d)).collect();
    Ok(CMatrix::diag(&diag))
}

/// `U[i][j] = ω_j^i / √d` with `ω_j = exp(2πi j/d)` (0-based).
pub fn qft_matrix(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    let norm = 1.0 / (d as f64).sqrt();
    Ok(CMatrix::from_fn(d, d, |i, j| root_of_unity(i * j, d) * norm))
}

/// `A` at tensor factor `i` of `|I|` factors, identities elsewhere.
pub fn at_factor(a: &CMatrix, i: usize, indices: usize) -> Result<CMatrix> {
    if i >= indices {
        return Err(Error::IndexOutOfRange { index: i, len: indices });
    }
    let d = a.rows();
    let factors: Vec<CMatrix> = (0..indices)
        .map(|j| if j == i { a.clone() } else { CMatrix::identity(d) })
        .collect();
    kron(&factors)
}

/// For prime moduli: the relabeling sending position `t` to the symbol of
/// `g^t` for the least primitive root `g`. Under it, multiplication by `g`
/// becomes the cyclic successor `t ↦ t+1`.
pub fn primitive_root_labeling(modulus: Modulus) -> Result<Perm> {
    let g = primitive_root(modulus).ok_or_else(|| {
        Error::Precondition(format!("{modulus} has no primitive root"))
    })?;
    let mut images = Vec::with_capacity(modulus.two_k());
    let mut x = 1;
    for _ in 0..modulus.two_k() {
        images.push((x - 1) as usize);
        x = modulus.mul(x, g);
    }
    Perm::new(images)
}

/// Unitary `U` on one factor `C^{2k}` whose columns are a joint eigenbasis of
/// the centralizer `C_{S_2k}(Aut(Z_n))` acting by permutation matrices, built
/// orbit by orbit. For prime `n` this is the relabeled Fourier transform
/// `P·U_{2k}` with `P` the primitive-root labeling.
///
/// On an orbit where some centralizer element is a single cycle, the block is
/// the Fourier transform along that cycle. Otherwise the block comes from the
/// eigenvectors of a generic Hermitian combination of the generators.
pub fn modulus_fourier(modulus: Modulus) -> Result<CMatrix> {
    let d = modulus.two_k();
    let centralizer = base_centralizer(modulus)?;
    let elements = centralizer.elements().expect("enumerated by construction");
    let mut u = CMatrix::zeros(d, d).into_inner();
    let mut col = 0;
    for orbit in centralizer.orbits() {
        let s = orbit.len();
        let cycle = elements.iter().find_map(|e| {
            let mut order = vec![orbit[0]];
            let mut x = e.apply(orbit[0]);
            while x != orbit[0] {
                order.push(x);
                x = e.apply(x);
            }
            (order.len() == s).then_some(order)
        });
        match cycle {
            Some(order) => {
                let norm = 1.0 / (s as f64).sqrt();
                for j in 0..s {
                    for (t, &sym) in order.iter().enumerate() {
                        u[(sym, col + j)] = root_of_unity(t * j, s) * norm;
                    }
                }
            }
            None => {
                let block = joint_eigenbasis(centralizer.generators(), &orbit)?;
                for j in 0..s {
                    for (t, &sym) in orbit.iter().enumerate() {
                        u[(sym, col + j)] = block[(t, j)];
                    }
                }
            }
        }
        col += s;
    }
    Ok(CMatrix::from(u))
}

/// Eigenvectors of `Σ_g (r_g ρ(g) + conj(r_g) ρ(g)*)` restricted to `orbit`.
/// The centralizer acts regularly on each orbit, so its characters there are
/// distinct and a generic combination separates them.
fn joint_eigenbasis(gens: &[Perm], orbit: &[usize]) -> Result<DMatrix<C64>> {
    let s = orbit.len();
    let pos = |sym: usize| orbit.iter().position(|&x| x == sym).expect("orbit closed");
    let mut h = DMatrix::<C64>::zeros(s, s);
    for (k, g) in gens.iter().enumerate() {
        let kf = k as f64;
        let r = C64::from_polar((2.0 + kf).sqrt(), 0.7 + 1.3 * kf);
        for (t, &sym) in orbit.iter().enumerate() {
            let img = pos(g.apply(sym));
            h[(img, t)] += r;
            h[(t, img)] += r.conj();
        }
    }
    let eig = h.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    if vals.windows(2).any(|w| w[1] - w[0] < 1e-6) {
        return Err(Error::Precondition(
            "centralizer characters not separated on an orbit".into(),
        ));
    }
    Ok(eig.eigenvectors)
}

/// `U_H = ⊗_i U` with `U` from [`modulus_fourier`].
pub fn fourier_h(mcl: &Mcl) -> Result<CMatrix> {
    let u = modulus_fourier(mcl.modulus())?;
    kron(&vec![u; mcl.indices()])
}

/// `⊗_i P` for the primitive-root labeling `P` (prime moduli only).
pub fn primitive_root_conjugator(mcl: &Mcl) -> Result<CMatrix> {
    let p = perm_matrix(&primitive_root_labeling(mcl.modulus())?);
    kron(&vec![p; mcl.indices()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn four_by_four_matrices() {
        let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
        let x = CMatrix::from_rows(&[
            vec![o, l, o, o],
            vec![o, o, l, o],
            vec![o, o, o, l],
            vec![l, o, o, o],
        ])
        .unwrap();
        assert_eq!(shift_matrix(4).unwrap(), x);
        let d = CMatrix::diag(&[l, i, -l, -i]);
        assert_eq!(clock_matrix(4).unwrap(), d);
        let u = CMatrix::from_rows(&[
            vec![l, l, l, l],
            vec![l, i, -l, -i],
            vec![l, -l, l, -l],
            vec![l, -i, -l, i],
        ])
        .unwrap()
        .scale(c(0.5, 0.0));
        assert!(qft_matrix(4).unwrap().approx_eq(&u, 1e-12));
    }

    #[test]
    fn qubit_case() {
        let h = 1.0 / 2f64.sqrt();
        let hadamard =
            CMatrix::from_rows(&[vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]])
                .unwrap();
        assert!(qft_matrix(2).unwrap().approx_eq(&hadamard, 1e-15));
        let pauli_x = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(shift_matrix(2).unwrap(), pauli_x);
    }

    #[test]
    fn fourier_diagonalizes_shift() {
        for d in [2, 4, 6, 8, 10] {
            let (x, dd, u) = (
                shift_matrix(d).unwrap(),
                clock_matrix(d).unwrap(),
                qft_matrix(d).unwrap(),
            );
            let conj = &(&u.adjoint() * &x) * &u;
            assert!(conj.distance(&dd) < 1e-9, "d={d}");
            for m in [&x, &dd, &u] {
                assert!(m.unitarity_defect() < 1e-10);
            }
        }
    }

    #[test]
    fn odd_or_tiny_dimensions_rejected() {
        assert!(shift_matrix(3).is_err());
        assert!(clock_matrix(0).is_err());
        assert!(qft_matrix(1).is_err());
    }

    #[test]
    fn primitive_root_labeling_turns_units_into_the_successor() {
        let z5 = Modulus::new(5).unwrap();
        let p = primitive_root_labeling(z5).unwrap();
        // powers of 2 mod 5: 1, 2, 4, 3
        assert_eq!(p.images(), &[0, 1, 3, 2]);
        let g = crate::ring::mult_perm(z5.residue(2), z5).unwrap();
        let relabeled = p.inverse().compose(&g).unwrap().compose(&p).unwrap();
        assert_eq!(relabeled, Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap());
        assert!(primitive_root_labeling(Modulus::new(9).unwrap()).is_err());
    }

    fn diagonalizes_centralizer(n: u64) {
        let m = Modulus::new(n).unwrap();
        let u = modulus_fourier(m).unwrap();
        assert!(u.unitarity_defect() < 1e-10, "Z_{n}");
        let c = base_centralizer(m).unwrap();
        for g in c.generators() {
            let conj = &(&u.adjoint() * &perm_matrix(g)) * &u;
            let off: f64 = (0..conj.rows())
                .flat_map(|i| (0..conj.cols()).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .map(|(i, j)| conj.get(i, j).norm_sqr())
                .sum();
            assert!(off.sqrt() < 1e-9, "Z_{n}: off-diagonal {off}");
        }
    }

    #[test]
    fn modulus_fourier_is_a_joint_eigenbasis() {
        for n in [3, 5, 7, 9, 15] {
            diagonalizes_centralizer(n);
        }
    }

    #[test]
    fn prime_modulus_fourier_is_relabeled_qft() {
        for n in [3, 5, 7] {
            let m = Modulus::new(n).unwrap();
            let p = perm_matrix(&primitive_root_labeling(m).unwrap());
            let expected = &p * &qft_matrix(m.two_k()).unwrap();
            assert!(modulus_fourier(m).unwrap().approx_eq(&expected, 1e-12), "Z_{n}");
        }
    }
}
