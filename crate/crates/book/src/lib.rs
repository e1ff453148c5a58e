//! Each chapter of `book/` is a module here, so `cargo test --doc` runs
//! every `rust` block in the book against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/lattice.md")]
pub mod lattice {}
#[doc = include_str!("../../../book/src/delta-implication.md")]
pub mod delta_implication {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/representation.md")]
pub mod representation {}
#[doc = include_str!("../../../book/src/generation.md")]
pub mod generation {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
