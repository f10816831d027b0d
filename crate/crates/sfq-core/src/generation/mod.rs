//! Generation structures: finite prevalent models ordered as successive
//! generations, with their own forcing relation.

mod forcing;
mod random;
mod structure;

pub use forcing::{gen_existence, gen_force, gen_force_with, gen_forced, gen_forced_with, gen_valid, ForallGuard, GenError};
pub use random::{random_structure, StructureBounds};
pub use structure::{GenViolation, GenerationStructure, NodeInGeneration};

#[cfg(test)]
mod tests;
