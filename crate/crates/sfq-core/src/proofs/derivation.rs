use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::rules::Rule;
use crate::syntax::{Formula, Term};

/// One inference step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: String,
    pub rule: Rule,
    pub conclusion: Formula,
    /// Indices of earlier steps.
    pub premises: Vec<usize>,
    /// `(premise position, hypothesis label)` pairs closed by this step.
    pub discharges: Vec<(usize, String)>,
    /// Label of a [`Rule::Hyp`] step.
    pub label: Option<String>,
    /// Instantiating term of the quantifier rules.
    pub term: Option<Term>,
    /// Eigenvariable of the quantifier rules.
    pub var: Option<String>,
}

impl Step {
    pub fn new(id: impl Into<String>, rule: Rule, conclusion: Formula, premises: Vec<usize>) -> Step {
        Step { id: id.into(), rule, conclusion, premises, discharges: Vec::new(), label: None, term: None, var: None }
    }
}

/// A malformed derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureError {
    Empty,
    DuplicateId(String),
    /// Premise index not strictly below the step.
    ForwardPremise { step: String, premise: usize },
    MissingLabel(String),
    /// Discharge refers to a premise position that does not exist.
    BadDischarge { step: String, position: usize },
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::Empty => f.write_str("derivation has no steps"),
            StructureError::DuplicateId(s) => write!(f, "step id `{s}` used twice"),
            StructureError::ForwardPremise { step, premise } => write!(f, "step `{step}` cites premise {premise}, which is not an earlier step"),
            StructureError::MissingLabel(s) => write!(f, "hypothesis step `{s}` has no label"),
            StructureError::BadDischarge { step, position } => write!(f, "step `{step}` discharges at premise position {position}, which it does not have"),
        }
    }
}

impl core::error::Error for StructureError {}

/// A derivation as a list of steps; each step cites earlier steps and the
/// last step is the conclusion. A step cited twice stands for two copies of
/// its subderivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    steps: Vec<Step>,
}

impl Derivation {
    pub fn new(steps: Vec<Step>) -> Result<Derivation, StructureError> {
        if steps.is_empty() {
            return Err(StructureError::Empty);
        }
        let mut ids = alloc::collections::BTreeSet::new();
        for (i, s) in steps.iter().enumerate() {
            if !ids.insert(s.id.as_str()) {
                return Err(StructureError::DuplicateId(s.id.clone()));
            }
            if let Some(&p) = s.premises.iter().find(|&&p| p >= i) {
                return Err(StructureError::ForwardPremise { step: s.id.clone(), premise: p });
            }
            if s.rule == Rule::Hyp && s.label.is_none() {
                return Err(StructureError::MissingLabel(s.id.clone()));
            }
            if let Some((pos, _)) = s.discharges.iter().find(|(pos, _)| *pos >= s.premises.len()) {
                return Err(StructureError::BadDischarge { step: s.id.clone(), position: *pos });
            }
        }
        Ok(Derivation { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn root(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn conclusion(&self) -> &Formula {
        &self.steps[self.root()].conclusion
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }
}
