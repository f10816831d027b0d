//! Countermodel search over enumerated models.

use alloc::string::String;
use alloc::vec::Vec;

use super::enumerate::{enumerate_models, SearchBounds};
use crate::kripke::StrictFinModel;
use crate::semantics::{EvalError, JudgmentKind, Session};
use crate::syntax::{ElemId, Formula};

/// What a countermodel must refute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Goal {
    /// Validity of a formula (its universal closure when open).
    Valid(Formula),
    /// `gamma |= a`.
    Consequence(Vec<Formula>, Formula),
}

impl Goal {
    fn refuted_by(&self, m: &StrictFinModel) -> Result<Option<(String, Instantiation)>, EvalError> {
        let mut s = Session::new(m);
        let j = match self {
            Goal::Valid(a) => s.judge(JudgmentKind::Valid, a)?,
            Goal::Consequence(gamma, a) => s.consequence(gamma, a)?,
        };
        Ok(if j.verdict {
            None
        } else {
            let c = j.certificate.expect("failed judgments carry a certificate");
            Some((c.node, c.instantiation))
        })
    }
}

type Instantiation = Vec<(String, ElemId)>;

/// A refuting model with the failing node and instantiation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub model: StrictFinModel,
    pub node: String,
    pub instantiation: Vec<(String, ElemId)>,
    /// Models examined, including this one.
    pub searched: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Countermodel),
    Exhausted { searched: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Countermodel> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// First model in the bounded class refuting `goal`, searching by
/// ascending node count.
pub fn countermodel(goal: &Goal, bounds: &SearchBounds) -> Result<SearchOutcome, EvalError> {
    let mut searched = 0;
    for m in enumerate_models(bounds) {
        searched += 1;
        if let Some((node, instantiation)) = goal.refuted_by(&m)? {
            return Ok(SearchOutcome::Found(Countermodel { model: m, node, instantiation, searched }));
        }
    }
    Ok(SearchOutcome::Exhausted { searched })
}
