use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::structure::{GenerationStructure, NodeInGeneration};
use crate::nodeset::NodeSet;
use crate::semantics::EvalError;
use crate::syntax::{ElemId, Formula, Term, EXISTENCE};

/// Guard used by the universal clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ForallGuard {
    /// `E(d) -> A(d)` at later generations.
    #[default]
    Existence,
    /// `top -> A(d)` at later generations.
    Top,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenError {
    Eval(EvalError),
    /// Validity over all nodes disagreed with forcing at the root node.
    RootMismatch { formula: String },
}

impl From<EvalError> for GenError {
    fn from(e: EvalError) -> GenError {
        GenError::Eval(e)
    }
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::Eval(e) => write!(f, "{e}"),
            GenError::RootMismatch { formula } => write!(f, "validity of {formula} disagrees with forcing at the root"),
        }
    }
}

impl core::error::Error for GenError {}

struct Evaluator<'g> {
    g: &'g GenerationStructure,
    guard: ForallGuard,
    /// Later-or-equal generations of each generation.
    later: Vec<Vec<usize>>,
    /// For each generation `a` and later `b`, the index in `b` of each node of `a`.
    node_maps: Vec<Vec<Vec<usize>>>,
}

impl<'g> Evaluator<'g> {
    fn new(g: &'g GenerationStructure, guard: ForallGuard) -> Self {
        let n = g.len();
        let later: Vec<Vec<usize>> = (0..n).map(|a| g.order().up(a).iter().collect()).collect();
        let node_maps = (0..n)
            .map(|a| {
                let fa = g.generation(a).frame();
                (0..n)
                    .map(|b| {
                        let fb = g.generation(b).frame();
                        (0..fa.len()).map(|k| fb.index_of(fa.name(k)).unwrap_or(usize::MAX)).collect()
                    })
                    .collect()
            })
            .collect();
        Evaluator { g, guard, later, node_maps }
    }

    fn denote(&self, gen: usize, t: &Term, env: &[(String, ElemId)]) -> Result<Option<ElemId>, EvalError> {
        let w = self.g.generation(gen);
        Ok(match t {
            Term::Var(x) => match env.iter().rev().find(|(y, _)| y == x) {
                Some((_, d)) => Some(*d),
                None => return Err(EvalError::NotClosed(x.clone())),
            },
            Term::Const(c) => match w.interpretation().constants.get(c) {
                Some(d) => Some(*d),
                None => return Err(EvalError::UnknownConstant(c.clone())),
            },
            Term::Name(d) => w.in_domain(*d).then_some(*d),
            Term::App(f, args) => {
                let Some(n) = w.signature().function_arity(f) else {
                    return Err(EvalError::UnknownFunction(f.clone()));
                };
                if n != args.len() {
                    return Err(EvalError::FunctionArity { function: f.clone(), expected: n, found: args.len() });
                }
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    match self.denote(gen, a, env)? {
                        Some(v) => vals.push(v),
                        None => return Ok(None),
                    }
                }
                w.interpretation().apply(f, &vals)
            }
        })
    }

    /// Whether every value of the environment lies in the domain of `gen`.
    fn in_language(&self, gen: usize, env: &[(String, ElemId)]) -> bool {
        let w = self.g.generation(gen);
        env.iter().all(|(_, d)| w.in_domain(*d))
    }

    fn gen_nodes(&self, gen: usize) -> NodeSet {
        let off = self.g.offset(gen);
        (0..self.g.generation(gen).frame().len()).map(|k| off + k).collect()
    }

    fn eval(&self, a: &Formula, env: &mut Vec<(String, ElemId)>) -> Result<NodeSet, EvalError> {
        let n = self.g.len();
        Ok(match a {
            Formula::Top => (0..n).filter(|&w| self.in_language(w, env)).fold(NodeSet::EMPTY, |s, w| s.union(self.gen_nodes(w))),
            Formula::Bot => NodeSet::EMPTY,
            Formula::Atom(p, args) => {
                let sig = self.g.generation(self.g.root()).signature();
                let Some(arity) = sig.predicate_arity(p) else {
                    return Err(EvalError::UnknownPredicate(p.clone()));
                };
                if arity != args.len() {
                    return Err(EvalError::PredicateArity { predicate: p.clone(), expected: arity, found: args.len() });
                }
                let mut out = NodeSet::EMPTY;
                for w in 0..n {
                    if !self.in_language(w, env) {
                        continue;
                    }
                    let mut tuple = Vec::with_capacity(args.len());
                    for t in args {
                        match self.denote(w, t, env)? {
                            Some(d) => tuple.push(d),
                            None => break,
                        }
                    }
                    if tuple.len() != args.len() {
                        continue;
                    }
                    let off = self.g.offset(w);
                    for k in self.g.generation(w).extension(p, &tuple).iter() {
                        out.insert(off + k);
                    }
                }
                out
            }
            Formula::And(l, r) => self.eval(l, env)?.intersect(self.eval(r, env)?),
            Formula::Or(l, r) => self.eval(l, env)?.union(self.eval(r, env)?),
            Formula::Implies(l, r) => {
                let sa = self.eval(l, env)?;
                let sb = self.eval(r, env)?;
                self.implication(sa, sb, env)
            }
            Formula::Not(_) => return Err(EvalError::NegationNotAllowed),
            Formula::Forall(x, body) => {
                let elements: Vec<ElemId> = self.g.elements().into_iter().collect();
                // per element, the nodes forcing the guarded instance
                let mut inst = Vec::with_capacity(elements.len());
                for &d in &elements {
                    env.push((x.clone(), d));
                    let sb = self.eval(body, env)?;
                    let guard = match self.guard {
                        ForallGuard::Existence => self.eval(&Formula::exists_pred(Term::Var(x.clone())), env)?,
                        ForallGuard::Top => self.eval(&Formula::Top, env)?,
                    };
                    let s = self.implication(guard, sb, env);
                    env.pop();
                    inst.push(s);
                }
                let mut out = NodeSet::EMPTY;
                for w in 0..n {
                    if !self.in_language(w, env) {
                        continue;
                    }
                    let fw = self.g.generation(w).frame();
                    for k in 0..fw.len() {
                        let ok = self.later[w].iter().all(|&w2| {
                            let k2 = self.node_maps[w][w2][k];
                            let flat = self.g.offset(w2) + k2;
                            elements
                                .iter()
                                .zip(&inst)
                                .all(|(&d, s)| !self.g.generation(w2).in_domain(d) || s.contains(flat))
                        });
                        if ok {
                            out.insert(self.g.offset(w) + k);
                        }
                    }
                }
                out
            }
            Formula::Exists(x, body) => {
                let mut out = NodeSet::EMPTY;
                for d in self.g.elements() {
                    env.push((x.clone(), d));
                    let sb = self.eval(body, env)?;
                    let e = self.eval(&Formula::exists_pred(Term::Var(x.clone())), env)?;
                    env.pop();
                    // witnesses come from the same generation's domain
                    let both = sb.intersect(e);
                    for w in 0..n {
                        if self.in_language(w, env) && self.g.generation(w).in_domain(d) {
                            out = out.union(both.intersect(self.gen_nodes(w)));
                        }
                    }
                }
                out
            }
        })
    }

    /// Nodes `(W, k)` such that for every `W' >= W` and `k' >= k` in `W'`
    /// forcing the antecedent, some `k'' >= k'` in `W'` forces the
    /// consequent.
    fn implication(&self, sa: NodeSet, sb: NodeSet, env: &[(String, ElemId)]) -> NodeSet {
        let n = self.g.len();
        // nodes of each generation from which the consequent is reachable
        let reach: Vec<NodeSet> = (0..n)
            .map(|w| {
                let off = self.g.offset(w);
                let fw = self.g.generation(w).frame();
                let local: NodeSet = sb.iter().filter(|&i| i >= off && i < off + fw.len()).map(|i| i - off).collect();
                fw.reach(local).iter().map(|k| k + off).collect()
            })
            .collect();
        let mut out = NodeSet::EMPTY;
        for w in 0..n {
            if !self.in_language(w, env) {
                continue;
            }
            let fw = self.g.generation(w).frame();
            for k in 0..fw.len() {
                let ok = self.later[w].iter().all(|&w2| {
                    let k2 = self.node_maps[w][w2][k];
                    let off = self.g.offset(w2);
                    let up: NodeSet = self.g.generation(w2).frame().up(k2).iter().map(|j| j + off).collect();
                    up.intersect(sa).is_subset(reach[w2])
                });
                if ok {
                    out.insert(self.g.offset(w) + k);
                }
            }
        }
        out
    }
}

/// Nodes-in-generation forcing `a` (its universal closure when open).
pub fn gen_forced_with(g: &GenerationStructure, a: &Formula, guard: ForallGuard) -> Result<Vec<NodeInGeneration>, EvalError> {
    let closed = a.universal_closure();
    let set = Evaluator::new(g, guard).eval(&closed, &mut Vec::new())?;
    Ok(g.nodes().into_iter().filter(|n| set.contains(g.flat(*n))).collect())
}

pub fn gen_forced(g: &GenerationStructure, a: &Formula) -> Result<Vec<NodeInGeneration>, EvalError> {
    gen_forced_with(g, a, ForallGuard::Existence)
}

/// `W, k ||- a`.
pub fn gen_force(g: &GenerationStructure, at: NodeInGeneration, a: &Formula) -> Result<bool, EvalError> {
    gen_force_with(g, at, a, ForallGuard::Existence)
}

pub fn gen_force_with(g: &GenerationStructure, at: NodeInGeneration, a: &Formula, guard: ForallGuard) -> Result<bool, EvalError> {
    Ok(gen_forced_with(g, a, guard)?.contains(&at))
}

/// Forcing at every node-in-generation, checked against forcing at the
/// root node of the root generation.
pub fn gen_valid(g: &GenerationStructure, a: &Formula) -> Result<bool, GenError> {
    let forced = gen_forced(g, a)?;
    let all = forced.len() == g.nodes().len();
    let at_root = forced.contains(&g.root_node());
    if all != at_root {
        return Err(GenError::RootMismatch { formula: crate::syntax::render(a) });
    }
    Ok(all)
}

/// Nodes-in-generation forcing `E(@d)`.
pub fn gen_existence(g: &GenerationStructure, d: ElemId) -> Result<Vec<NodeInGeneration>, EvalError> {
    gen_forced(g, &Formula::Atom(EXISTENCE.to_string(), alloc::vec![Term::Name(d)]))
}

