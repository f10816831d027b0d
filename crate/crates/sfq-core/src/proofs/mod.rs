//! Natural deduction derivations and their checkers.

mod build;
mod check;
pub mod corpus;
mod derivation;
mod derived;
mod rules;

pub use build::{Node, ProofBuilder};
pub use check::{check, check_with, match_instance, CheckOptions, NoMatch, CheckReport, Failure, Violation};
pub use derivation::{Derivation, Step, StructureError};
pub use derived::{contrapose, exists_loc_i_p, expand_derived, lift_to_nsfp, DerivedError, DerivedRule};
pub use rules::{Rule, System};

#[cfg(test)]
mod tests;
