//! Bounded model enumeration, random generation and countermodel search.

mod countermodel;
mod enumerate;
mod formulas;
mod random;
mod shapes;

pub use countermodel::{countermodel, Countermodel, Goal, SearchOutcome};
pub use enumerate::{enumerate_models, BoundsError, ModelClass, ModelStream, SearchBounds};
pub use formulas::FormulaGen;
pub use random::{random_model, random_model_with, rng_from_seed};
pub use shapes::{node_name, random_frame, shape_code, shapes, up_sets};

#[cfg(test)]
mod tests;
