//! Constructions on models and formulas: contraction, generated
//! submodels, preconstruction, classical structures, the star translation,
//! negation interchange, and the passage between generation structures and
//! intuitionistic models.

mod formulas;
mod generations;
mod models;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::generation::GenViolation;
use crate::kripke::ModelViolation;
use crate::semantics::EvalError;
use crate::syntax::ElemId;

pub use formulas::{mk_member, star, swap_neg, unstar, Direction};
pub use generations::{gen_to_int, int_to_gen};
pub use models::{contract, generated_submodel, preconstruct, to_classical};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformError {
    NotPrevalent,
    NotTwoNode,
    NotPreconstructive,
    /// `~` occurs where only the negation-free language is allowed.
    HasNegation,
    EmptyFamily,
    /// Member `index` of a model family violates the requirements.
    BadFamilyMember { index: usize, reason: &'static str },
    Eval(EvalError),
    /// Incomparable generations interpret a function differently.
    FunctionConflict { function: String, args: Vec<ElemId> },
    Model(Vec<ModelViolation>),
    Generation(Vec<GenViolation>),
}

impl From<EvalError> for TransformError {
    fn from(e: EvalError) -> Self {
        TransformError::Eval(e)
    }
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::NotPrevalent => f.write_str("model is not prevalent"),
            TransformError::NotTwoNode => f.write_str("model does not have exactly two nodes"),
            TransformError::NotPreconstructive => f.write_str("model is not preconstructive"),
            TransformError::HasNegation => f.write_str("formula contains `~`"),
            TransformError::EmptyFamily => f.write_str("model family is empty"),
            TransformError::BadFamilyMember { index, reason } => write!(f, "family member {index}: {reason}"),
            TransformError::Eval(e) => write!(f, "{e}"),
            TransformError::FunctionConflict { function, args } => {
                write!(f, "generations disagree on {function}{}", crate::kripke::fmt_tuple(args))
            }
            TransformError::Model(v) => {
                f.write_str("resulting model is invalid:")?;
                for e in v {
                    write!(f, " {e};")?;
                }
                Ok(())
            }
            TransformError::Generation(v) => {
                f.write_str("resulting generation structure is invalid:")?;
                for e in v {
                    write!(f, " {e};")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for TransformError {}
