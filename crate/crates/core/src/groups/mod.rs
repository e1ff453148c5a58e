//! Permutation groups: cycle types, centralizers in `S_m`, wreath products
//! and the automorphism group of a critical multi-cubic lattice.

pub mod aut;
pub mod centralizer;
pub mod perm;
pub mod wreath;

pub use aut::{
    action_group, atom_action, aut_group_of_m, base_centralizer, center_of_action,
    is_transitive_on_atoms, unit_action,
};
pub use centralizer::{centralizer_by_orbits, centralizer_in_sym};
pub use perm::{centralizer_order_formula, closure, CycleType, Perm, PermGroup};
pub use wreath::{wreath_order, WreathElement};
