//! Critical multi-cubic lattices over `Z_{2k+1}`, their automorphism groups,
//! and their unitary representations on `(C^{2k})^{⊗|I|}`.
//!
//! The crate is organized bottom-up:
//!
//! * [`ring`]: the base ring `Z_{2k+1}` and its unit group as permutations.
//! * [`lattice`]: lattice elements, order, meet/join, `Δ` and implication.
//! * [`groups`]: permutations, centralizers, wreath products, `Aut(M)`.
//! * [`representation`]: shift/clock/Fourier matrices, projections, matrix
//!   units, generated `*`-algebras, commutants and projection meets.
//! * [`verify`]: named property checks that drive the `mcl verify` command.
//!
//! A guide with worked chapters lives in `book/`.

pub mod error;
pub mod groups;
pub mod lattice;
pub mod representation;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{Entry, Mcl, MclElement};
pub use ring::{Modulus, Residue};
