use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::build::{Node, ProofBuilder};
use super::derivation::Derivation;
use super::rules::{Rule, System};
use crate::syntax::{quantifier_mode, Formula, QuantMode, Term};

/// A derived rule instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedRule {
    /// `wneg wneg A, wneg wneg (A -> B) |- wneg wneg B` in NSF.
    MpUnderWneg { a: Formula, b: Formula },
    /// `|- A -> A` in NSF.
    Identity { a: Formula },
    /// `A[t/x] |- wneg wneg exists x. A` in NSF_P, `x` local in `A`.
    ExistsLocIP { var: String, body: Formula, term: Term },
    /// From `exists y. A` and a derivation of `wneg wneg C` whose hypothesis
    /// `A[x/y]` is labelled `label`, conclude `wneg wneg C` in NSF_P.
    ExistsLocEP { major: Formula, var: String, label: String, minor: Derivation },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedError {
    /// The parameters do not fit the rule.
    Parameters(String),
}

impl fmt::Display for DerivedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedError::Parameters(m) => write!(f, "parameter mismatch: {m}"),
        }
    }
}

impl core::error::Error for DerivedError {}

fn bad(m: String) -> DerivedError {
    DerivedError::Parameters(m)
}

impl DerivedRule {
    pub fn system(&self) -> System {
        match self {
            DerivedRule::MpUnderWneg { .. } | DerivedRule::Identity { .. } => System::Nsf,
            DerivedRule::ExistsLocIP { .. } | DerivedRule::ExistsLocEP { .. } => System::NsfP,
        }
    }
}

/// Expands a derived rule instance into primitive steps.
pub fn expand_derived(rule: &DerivedRule) -> Result<Derivation, DerivedError> {
    let mut b = ProofBuilder::new(rule.system());
    let root = match rule {
        DerivedRule::MpUnderWneg { a, b: c } => {
            let (wa, _) = b.hyp(Formula::wneg(Formula::wneg(a.clone())));
            let (wi, _) = b.hyp(Formula::wneg(Formula::wneg(Formula::implies(a.clone(), c.clone()))));
            b.mp_ww(wa, wi)
        }
        DerivedRule::Identity { a } => {
            let (h, l) = b.hyp(a.clone());
            let w = b.ww_i(h);
            b.imp_i(&l, a.clone(), a.clone(), w)
        }
        DerivedRule::ExistsLocIP { var, body, term } => {
            if quantifier_mode(body, var) != QuantMode::Local {
                return Err(bad(format!("`{var}` occurs only globally in `{body}`")));
            }
            let inst = body.substitute(var, term).map_err(|_| bad(format!("`{term}` is not free for `{var}`")))?;
            let (h, _) = b.hyp(inst);
            exists_loc_i_p(&mut b, h, var, body.clone(), term.clone())
        }
        DerivedRule::ExistsLocEP { major, var, label, minor } => {
            let Formula::Exists(y, body) = major else {
                return Err(bad(format!("`{major}` is not existential")));
            };
            if quantifier_mode(body, y) != QuantMode::Local {
                return Err(bad(format!("`{y}` occurs only globally in `{body}`")));
            }
            let c = minor.conclusion();
            if c.as_double_wneg().is_none() {
                return Err(bad(format!("minor conclusion `{c}` is not of the form `wneg wneg C`")));
            }
            let inst = body
                .substitute(y, &Term::Var(var.clone()))
                .map_err(|_| bad(format!("`{var}` is not free for `{y}`")))?;
            let labelled = minor.steps().iter().any(|s| s.rule == Rule::Hyp && s.label.as_deref() == Some(label) && s.conclusion == inst);
            if !labelled {
                return Err(bad(format!("no hypothesis `{inst}` labelled `{label}` in the minor derivation")));
            }
            let (m, _) = b.hyp(major.clone());
            let (n, renaming) = b.import(minor);
            let new = renaming.iter().find(|(old, _)| old == label).map(|(_, n)| n.clone()).expect("label was renamed");
            b.exists_e(m, var, n, &new, None)
        }
    };
    Ok(b.finish(root))
}

/// `wneg wneg exists x. body` from a node proving `body[t/x]`.
pub fn exists_loc_i_p(b: &mut ProofBuilder, inst: Node, x: &str, body: Formula, t: Term) -> Node {
    let we = b.ww_existence(t.clone());
    let (e, le) = b.hyp(Formula::exists_pred(t.clone()));
    let ex = b.exists_i(inst, x, body.clone(), t, Some(e));
    b.ww_bind(we, &le, ex, Formula::exists(x, body))
}

/// Rewrites an NSF derivation into NSF_P.
pub fn lift_to_nsfp(d: &Derivation) -> Derivation {
    let mut b = ProofBuilder::new(System::NsfP);
    let mut map: Vec<Node> = Vec::with_capacity(d.steps().len());
    b.reserve_labels(d.steps().iter().flat_map(|s| s.label.iter().chain(s.discharges.iter().map(|(_, l)| l))));
    for s in d.steps() {
        let prem: Vec<Node> = s.premises.iter().map(|&p| map[p]).collect();
        let mut copy = s.clone();
        copy.premises = prem.clone();
        let n = match s.rule {
            Rule::NegI1 | Rule::NegI2 => {
                copy.rule = Rule::NegIP;
                b.push(copy)
            }
            Rule::WnegE => b.absurd(prem[0], prem[1]),
            Rule::St => {
                copy.rule = Rule::StP;
                b.push(copy)
            }
            Rule::ForallGloI => {
                copy.rule = Rule::ForallIP;
                b.push(copy)
            }
            Rule::ForallGloE => {
                copy.rule = Rule::ForallEP;
                b.push(copy)
            }
            Rule::ForallLocE => {
                copy.rule = Rule::ForallEP;
                copy.premises.truncate(1);
                b.push(copy)
            }
            Rule::ForallLocI => {
                let Formula::Forall(x, body) = &s.conclusion else { unreachable!("checked shape") };
                let y = s.var.clone().unwrap_or_else(|| x.clone());
                let target = body.substitute(x, &Term::Var(y.clone())).unwrap_or_else(|_| (**body).clone());
                let mut inner = prem[0];
                for (_, label) in &s.discharges {
                    let we = b.ww_existence(Term::Var(y.clone()));
                    inner = b.ww_bind(we, label, inner, target.clone());
                }
                copy.rule = Rule::ForallIP;
                copy.premises = alloc::vec![inner];
                copy.discharges.clear();
                b.push(copy)
            }
            _ => b.push(copy),
        };
        map.push(n);
    }
    b.finish(map[d.root()])
}

/// From a derivation of `B` whose open hypotheses are all `A`, derivations
/// of `wneg B |- wneg A` and `~B |- ~A` in NSF.
pub fn contrapose(d: &Derivation, a: &Formula) -> Result<(Derivation, Derivation), DerivedError> {
    let report = super::check::check(d, System::Nsf);
    if let Some(h) = report.open_hypotheses.iter().find(|h| *h != a) {
        return Err(bad(format!("open hypothesis `{h}` differs from `{a}`")));
    }
    let discharged: Vec<&String> = d.steps().iter().flat_map(|s| s.discharges.iter().map(|(_, l)| l)).collect();
    let unify = |d: &Derivation| -> Derivation {
        let steps = d
            .steps()
            .iter()
            .map(|s| {
                let mut s = s.clone();
                let open = s.label.as_ref().is_some_and(|l| !discharged.contains(&l));
                if s.rule == Rule::Hyp && s.conclusion == *a && open {
                    s.label = Some("contra".into());
                }
                s
            })
            .collect();
        Derivation::new(steps).expect("relabelling keeps structure")
    };
    let d = unify(d);
    let conclusion = d.conclusion().clone();
    let mut out = Vec::new();
    for neg in [false, true] {
        let mut b = ProofBuilder::new(System::Nsf);
        let hb = if neg { Formula::not(conclusion.clone()) } else { Formula::wneg(conclusion.clone()) };
        let (h, _) = b.hyp(hb);
        let (root, renaming) = b.import(&d);
        let label = renaming.iter().find(|(o, _)| o == "contra").map(|(_, n)| n.clone()).unwrap_or_else(|| b.fresh_label());
        let bot = b.absurd(h, root);
        let r = if neg { b.neg_intro(&label, a.clone(), bot) } else { b.wneg_i(&label, a.clone(), bot) };
        out.push(b.finish(r));
    }
    let neg = out.pop().expect("two derivations");
    let wneg = out.pop().expect("two derivations");
    Ok((wneg, neg))
}
