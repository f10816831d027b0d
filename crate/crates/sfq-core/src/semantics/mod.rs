//! Forcing relations and the judgments built on them.
//!
//! Formulas are evaluated to the set of nodes forcing them, so one pass
//! answers every node at once.

mod classical;
mod eval;
mod judgments;

pub use classical::{classical_force, intuit_force, intuit_force_at, intuit_forced_nodes, intuit_valid};
pub use eval::{compile, node_index, Clauses, Compiled, EvalError, ForcingStructure, Session};
pub use judgments::{
    assertible, consequence, consequence_judgment, force, forced_nodes, forced_nodes_in, judge, prevalent, stable_in,
    valid, Certificate, Judgment, JudgmentKind,
};

#[cfg(test)]
mod tests;
