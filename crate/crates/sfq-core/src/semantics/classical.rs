use alloc::string::String;
use alloc::vec::Vec;

use super::eval::EvalError;
use crate::kripke::{ClassicalStructure, IntuitionisticModel};
use crate::nodeset::NodeSet;
use crate::semantics::eval::{compile, node_index, Session};
use crate::syntax::{ElemId, Formula, Term, EXISTENCE};

/// Tarskian truth of a closed formula; `~A` and `A -> bot` are both
/// classical negation. With `e_restricted`, quantifiers range over the
/// extension of `E` instead of the whole domain.
pub fn classical_force(m: &ClassicalStructure, a: &Formula, e_restricted: bool) -> Result<bool, EvalError> {
    if let Some(x) = a.free_vars().into_iter().next() {
        return Err(EvalError::NotClosed(x));
    }
    let mut env = Vec::new();
    truth(m, a, e_restricted, &mut env)
}

fn term(m: &ClassicalStructure, t: &Term, env: &[(String, ElemId)]) -> Result<ElemId, EvalError> {
    match t {
        Term::Var(x) => env.iter().rev().find(|(y, _)| y == x).map(|(_, d)| *d).ok_or_else(|| EvalError::NotClosed(x.clone())),
        Term::Const(c) => m.interpretation.constants.get(c).copied().ok_or_else(|| EvalError::UnknownConstant(c.clone())),
        Term::Name(d) => {
            if m.domain.contains(d) {
                Ok(*d)
            } else {
                Err(EvalError::UnknownName(*d))
            }
        }
        Term::App(g, args) => {
            let n = m.signature.function_arity(g).ok_or_else(|| EvalError::UnknownFunction(g.clone()))?;
            if n != args.len() {
                return Err(EvalError::FunctionArity { function: g.clone(), expected: n, found: args.len() });
            }
            let vals = args.iter().map(|a| term(m, a, env)).collect::<Result<Vec<_>, _>>()?;
            m.interpretation.apply(g, &vals).ok_or_else(|| EvalError::UnknownFunction(g.clone()))
        }
    }
}

fn truth(m: &ClassicalStructure, a: &Formula, er: bool, env: &mut Vec<(String, ElemId)>) -> Result<bool, EvalError> {
    Ok(match a {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(p, args) => {
            let n = m.signature.predicate_arity(p).ok_or_else(|| EvalError::UnknownPredicate(p.clone()))?;
            if n != args.len() {
                return Err(EvalError::PredicateArity { predicate: p.clone(), expected: n, found: args.len() });
            }
            let vals = args.iter().map(|t| term(m, t, env)).collect::<Result<Vec<_>, _>>()?;
            m.holds(p, &vals)
        }
        Formula::And(b, c) => truth(m, b, er, env)? && truth(m, c, er, env)?,
        Formula::Or(b, c) => truth(m, b, er, env)? || truth(m, c, er, env)?,
        Formula::Implies(b, c) => !truth(m, b, er, env)? || truth(m, c, er, env)?,
        Formula::Not(b) => !truth(m, b, er, env)?,
        Formula::Forall(x, b) | Formula::Exists(x, b) => {
            let universal = matches!(a, Formula::Forall(..));
            let range: Vec<ElemId> = m.domain.iter().copied().filter(|d| !er || m.holds(EXISTENCE, &[*d])).collect();
            let mut result = universal;
            for d in range {
                env.push((x.clone(), d));
                let v = truth(m, b, er, env);
                env.pop();
                if v? != universal {
                    result = !universal;
                    break;
                }
            }
            result
        }
    })
}

/// Nodes intuitionistically forcing the universal closure of `a`.
pub fn intuit_forced_nodes(m: &IntuitionisticModel, a: &Formula) -> Result<NodeSet, EvalError> {
    let c = compile(m, &a.universal_closure(), &[])?;
    Ok(Session::new(m).eval(&c, &[]))
}

/// `k` intuitionistically forces `a`; names in `a` must lie in `D(k)`.
pub fn intuit_force(m: &IntuitionisticModel, k: &str, a: &Formula) -> Result<bool, EvalError> {
    let k = node_index(m, k)?;
    intuit_force_at(m, k, a)
}

pub fn intuit_force_at(m: &IntuitionisticModel, k: usize, a: &Formula) -> Result<bool, EvalError> {
    if let Some(d) = a.names().into_iter().find(|d| !m.domain_at(k).contains(d)) {
        return Err(EvalError::UnknownName(d));
    }
    Ok(intuit_forced_nodes(m, a)?.contains(k))
}

/// Forced at the root.
pub fn intuit_valid(m: &IntuitionisticModel, a: &Formula) -> Result<bool, EvalError> {
    intuit_force_at(m, m.frame().root(), a)
}
