use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::eval::{compile, node_index, EvalError, ForcingStructure, Session};
use crate::kripke::{all_tuples, StrictFinModel};
use crate::nodeset::NodeSet;
use crate::syntax::{occurrence_mode, ElemId, Formula, OccurrenceMode, EXISTENCE};

/// Which judgment was made.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JudgmentKind {
    Valid,
    Assertible,
    Prevalent,
    Consequence,
    Stable,
}

impl JudgmentKind {
    pub fn name(self) -> &'static str {
        match self {
            JudgmentKind::Valid => "valid",
            JudgmentKind::Assertible => "assertible",
            JudgmentKind::Prevalent => "prevalent",
            JudgmentKind::Consequence => "consequence",
            JudgmentKind::Stable => "stable",
        }
    }
}

/// A failing node and the values given to the free variables there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub node: String,
    pub instantiation: Vec<(String, ElemId)>,
}

/// A verdict with a certificate when it is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub kind: JudgmentKind,
    pub verdict: bool,
    pub certificate: Option<Certificate>,
}

impl<'m> Session<'m, StrictFinModel> {
    /// `k` forces (the universal closure of) `a`.
    pub fn force(&mut self, k: usize, a: &Formula) -> Result<bool, EvalError> {
        Ok(self.forced_nodes(a)?.contains(k))
    }

    pub fn valid(&mut self, a: &Formula) -> Result<bool, EvalError> {
        let r = self.model().frame().root();
        self.force(r, a)
    }

    pub fn assertible(&mut self, a: &Formula) -> Result<bool, EvalError> {
        Ok(!self.forced_nodes(a)?.is_empty())
    }

    pub fn prevalent(&mut self, a: &Formula) -> Result<bool, EvalError> {
        let s = self.forced_nodes(a)?;
        Ok(self.model().frame().is_cofinal(s))
    }

    /// Nodes forcing `a[d/x]` for every free `x` under the block clause:
    /// `guard(d) -> a[d]` with the guard the conjunction of `E(d_i)` over
    /// the locally occurring variables.
    fn block_failure(&mut self, a: &Formula, k: usize) -> Result<Option<Vec<(String, ElemId)>>, EvalError> {
        let free: Vec<String> = a.free_vars().into_iter().collect();
        let c = compile(self.model(), a, &free)?;
        let local: Vec<bool> = free.iter().map(|x| occurrence_mode(a, x) != OccurrenceMode::GlobalOnly).collect();
        let model = self.model();
        let frame = model.frame();
        for env in all_tuples(model.domain(), free.len()) {
            let mut guard = frame.all();
            for (i, d) in env.iter().enumerate() {
                if local[i] {
                    guard = guard.intersect(model.existence(*d));
                }
            }
            let s = self.eval(&c, &env);
            let ok = frame.boxed(guard.complement(frame.len()).union(frame.reach(s)));
            if !ok.contains(k) {
                return Ok(Some(free.iter().cloned().zip(env).collect()));
            }
        }
        Ok(None)
    }

    pub fn judge(&mut self, kind: JudgmentKind, a: &Formula) -> Result<Judgment, EvalError> {
        let frame = self.model().frame().clone();
        let s = self.forced_nodes(a)?;
        let r = frame.root();
        let (verdict, node) = match kind {
            JudgmentKind::Valid => (s.contains(r), r),
            JudgmentKind::Assertible => (!s.is_empty(), r),
            JudgmentKind::Prevalent => {
                let bad = frame.reach(s).complement(frame.len());
                (bad.is_empty(), bad.first().unwrap_or(r))
            }
            JudgmentKind::Consequence => return self.consequence(&[], a),
            JudgmentKind::Stable => return self.stable(a),
        };
        let certificate = if verdict {
            None
        } else {
            let instantiation = if a.is_closed() || kind == JudgmentKind::Prevalent {
                Vec::new()
            } else {
                self.block_failure(a, node)?.unwrap_or_default()
            };
            Some(Certificate { node: frame.name(node).to_string(), instantiation })
        };
        Ok(Judgment { kind, verdict, certificate })
    }

    /// `gamma` entails `a` in the model.
    pub fn consequence(&mut self, gamma: &[Formula], a: &Formula) -> Result<Judgment, EvalError> {
        if gamma.is_empty() && !a.is_closed() {
            let j = self.judge(JudgmentKind::Valid, a)?;
            return Ok(Judgment { kind: JudgmentKind::Consequence, ..j });
        }
        self.consequence_as(JudgmentKind::Consequence, gamma, a)
    }

    fn consequence_as(&mut self, kind: JudgmentKind, gamma: &[Formula], a: &Formula) -> Result<Judgment, EvalError> {
        let mut all_parts: Vec<Formula> = gamma.to_vec();
        all_parts.push(a.clone());
        let joint = Formula::conjunction(&all_parts);
        let free: Vec<String> = joint.free_vars().into_iter().collect();
        let local: Vec<bool> = free.iter().map(|x| occurrence_mode(&joint, x) != OccurrenceMode::GlobalOnly).collect();
        let hyp = compile(self.model(), &Formula::conjunction(gamma), &free)?;
        let concl = compile(self.model(), a, &free)?;
        let model = self.model();
        let frame = model.frame();
        for env in all_tuples(model.domain(), free.len()) {
            let mut guard = frame.all();
            for (i, d) in env.iter().enumerate() {
                if local[i] {
                    guard = guard.intersect(model.extension(EXISTENCE, &[*d]));
                }
            }
            let sh = self.eval(&hyp, &env);
            let sa = self.eval(&concl, &env);
            let bad = guard.intersect(sh).minus(sa);
            if let Some(k) = bad.first() {
                return Ok(Judgment {
                    kind,
                    verdict: false,
                    certificate: Some(Certificate {
                        node: frame.name(k).to_string(),
                        instantiation: free.iter().cloned().zip(env).collect(),
                    }),
                });
            }
        }
        Ok(Judgment { kind, verdict: true, certificate: None })
    }

    /// `wneg wneg a` entails `a`.
    pub fn stable(&mut self, a: &Formula) -> Result<Judgment, EvalError> {
        let dd = Formula::wneg(Formula::wneg(a.clone()));
        self.consequence_as(JudgmentKind::Stable, &[dd], a)
    }
}

/// Nodes forcing the universal closure of `a`.
pub fn forced_nodes(m: &StrictFinModel, a: &Formula) -> Result<NodeSet, EvalError> {
    Session::new(m).forced_nodes(a)
}

/// `k` forces `a`; open formulas are closed universally.
pub fn force(m: &StrictFinModel, k: &str, a: &Formula) -> Result<bool, EvalError> {
    let k = node_index(m, k)?;
    Session::new(m).force(k, a)
}

pub fn valid(m: &StrictFinModel, a: &Formula) -> Result<bool, EvalError> {
    Session::new(m).valid(a)
}

pub fn assertible(m: &StrictFinModel, a: &Formula) -> Result<bool, EvalError> {
    Session::new(m).assertible(a)
}

pub fn prevalent(m: &StrictFinModel, a: &Formula) -> Result<bool, EvalError> {
    Session::new(m).prevalent(a)
}

pub fn judge(m: &StrictFinModel, kind: JudgmentKind, a: &Formula) -> Result<Judgment, EvalError> {
    Session::new(m).judge(kind, a)
}

pub fn consequence(m: &StrictFinModel, gamma: &[Formula], a: &Formula) -> Result<bool, EvalError> {
    Ok(Session::new(m).consequence(gamma, a)?.verdict)
}

pub fn consequence_judgment(m: &StrictFinModel, gamma: &[Formula], a: &Formula) -> Result<Judgment, EvalError> {
    Session::new(m).consequence(gamma, a)
}

pub fn stable_in(m: &StrictFinModel, a: &Formula) -> Result<bool, EvalError> {
    Ok(Session::new(m).stable(a)?.verdict)
}

/// Forcing with every name resolved; for closed formulas in callers that
/// already hold a compiled-free formula.
pub fn forced_nodes_in<S: ForcingStructure + ?Sized>(m: &S, a: &Formula) -> Result<NodeSet, EvalError> {
    Session::new(m).forced_nodes(a)
}
