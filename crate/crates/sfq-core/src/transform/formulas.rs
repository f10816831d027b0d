use alloc::boxed::Box;
use alloc::vec::Vec;

use super::TransformError;
use crate::kripke::StrictFinModel;
use crate::semantics::{EvalError, Session};
use crate::syntax::{analyses, quantifier_mode, Formula, FormulaContext, QuantMode, Shape, Term};

/// Wraps every existential subformula in `wneg wneg`, homomorphic
/// elsewhere.
pub fn star(a: &Formula) -> Result<Formula, TransformError> {
    Ok(match a {
        Formula::Top | Formula::Bot | Formula::Atom(..) => a.clone(),
        Formula::And(l, r) => Formula::and(star(l)?, star(r)?),
        Formula::Or(l, r) => Formula::or(star(l)?, star(r)?),
        Formula::Implies(l, r) => Formula::implies(star(l)?, star(r)?),
        Formula::Not(_) => return Err(TransformError::HasNegation),
        Formula::Forall(x, b) => Formula::Forall(x.clone(), Box::new(star(b)?)),
        Formula::Exists(x, b) => Formula::wneg(Formula::wneg(Formula::Exists(x.clone(), Box::new(star(b)?)))),
    })
}

/// The formula whose star is `b`, if any.
pub fn unstar(b: &Formula) -> Option<Formula> {
    if let Some(Formula::Exists(x, body)) = b.as_double_wneg() {
        return Some(Formula::Exists(x.clone(), Box::new(unstar(body)?)));
    }
    Some(match b {
        Formula::Top | Formula::Bot | Formula::Atom(..) => b.clone(),
        Formula::And(l, r) => Formula::and(unstar(l)?, unstar(r)?),
        Formula::Or(l, r) => Formula::or(unstar(l)?, unstar(r)?),
        Formula::Implies(l, r) => Formula::implies(unstar(l)?, unstar(r)?),
        Formula::Not(_) | Formula::Exists(..) => return None,
        Formula::Forall(x, body) => Formula::Forall(x.clone(), Box::new(unstar(body)?)),
    })
}

/// Whether the occurrence `(f, b)` belongs to the set `M_k` of
/// occurrences at which `~b` may be weakened to `wneg b` at node `k`.
pub fn mk_member(w: &StrictFinModel, k: usize, f: &FormulaContext, b: &Formula) -> Result<bool, EvalError> {
    let whole = f.fill(&Formula::not(b.clone()));
    if let Some(x) = whole.free_vars().into_iter().next() {
        return Err(EvalError::NotClosed(x));
    }
    let mut s = Session::new(w);
    member(&mut s, k, f, b)
}

fn member(s: &mut Session<StrictFinModel>, k: usize, f: &FormulaContext, b: &Formula) -> Result<bool, EvalError> {
    use crate::syntax::Connective::*;
    match f {
        FormulaContext::Hole
        | FormulaContext::Left(Implies, ..)
        | FormulaContext::Right(Implies, ..)
        | FormulaContext::Not(_)
        | FormulaContext::Forall(..) => Ok(true),
        FormulaContext::Left(And, g, _) | FormulaContext::Right(And, _, g) => member(s, k, g, b),
        FormulaContext::Left(Or, g, a) | FormulaContext::Right(Or, a, g) => Ok(member(s, k, g, b)? || s.force(k, a)?),
        FormulaContext::Exists(x, g) => {
            let with_neg = g.fill(&Formula::not(b.clone()));
            let with_wneg = g.fill(&Formula::wneg(b.clone()));
            let mode_ok = quantifier_mode(&with_neg, x) == QuantMode::Local || quantifier_mode(&with_wneg, x) == QuantMode::Global;
            if !mode_ok {
                return Ok(false);
            }
            let mut every = true;
            for d in s.model().domain().to_vec() {
                let t = Term::Name(d);
                let inst = with_neg.substitute(x, &t).expect("names cannot be captured");
                if s.force(k, &inst)? {
                    let (g2, b2) = g.substitute_with(x, &t, b).expect("names cannot be captured");
                    if !member(s, k, &g2, &b2)? {
                        every = false;
                        break;
                    }
                }
            }
            Ok(every || s.force(k, &Formula::Exists(x.clone(), Box::new(with_wneg)))?)
        }
    }
}

/// Which negation [`swap_neg`] replaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `~B` to `wneg B`, at occurrences in `M_r` for the root of every
    /// family member.
    NegToWneg,
    /// `wneg B` to `~B`, at every occurrence.
    WnegToNeg,
}

/// Single-occurrence negation swaps of `a`, without duplicates, in
/// pre-order of the occurrence. Family members must be two-node
/// preconstructive prevalent models.
pub fn swap_neg(a: &Formula, direction: Direction, family: &[StrictFinModel]) -> Result<Vec<Formula>, TransformError> {
    if family.is_empty() {
        return Err(TransformError::EmptyFamily);
    }
    for (index, w) in family.iter().enumerate() {
        let reason = if w.frame().len() != 2 {
            "not two-node"
        } else if !w.is_prevalent() {
            "not prevalent"
        } else if !w.is_preconstructive() {
            "not preconstructive"
        } else {
            continue;
        };
        return Err(TransformError::BadFamilyMember { index, reason });
    }
    let mut out: Vec<Formula> = Vec::new();
    match direction {
        Direction::NegToWneg => {
            'occ: for (f, b) in analyses(a, Shape::Neg) {
                for w in family {
                    if !mk_member(w, w.frame().root(), &f, &b)? {
                        continue 'occ;
                    }
                }
                push_new(&mut out, f.fill(&Formula::wneg(b)));
            }
        }
        Direction::WnegToNeg => {
            for (f, b) in analyses(a, Shape::Wneg) {
                push_new(&mut out, f.fill(&Formula::not(b)));
            }
        }
    }
    Ok(out)
}

fn push_new(out: &mut Vec<Formula>, a: Formula) {
    if !out.contains(&a) {
        out.push(a);
    }
}
