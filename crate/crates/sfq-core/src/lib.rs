//! Strict finitistic first-order logic.
//!
//! Finite tree-ordered models with an existence predicate `E`, the forcing
//! relation with time-gapped implication and global negation, natural
//! deduction checkers for the systems NSF and NSF_P, model transformations,
//! generation structures, bounded model enumeration and countermodel search.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod generation;
pub mod kripke;
pub mod nodeset;
pub mod ordering;
pub mod proofs;
pub mod search;
pub mod semantics;
pub mod syntax;
pub mod transform;

pub use nodeset::NodeSet;
