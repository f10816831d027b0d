//! Set-valued evaluation: each formula denotes the set of nodes forcing it.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicUsize, Ordering};

use crate::kripke::{Frame, Interpretation, IntuitionisticModel, StrictFinModel};
use crate::nodeset::NodeSet;
use crate::syntax::{quantifier_mode, ElemId, Formula, QuantMode, Signature, Term, EXISTENCE};

/// Failure to evaluate a formula in a structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    UnknownPredicate(String),
    PredicateArity { predicate: String, expected: usize, found: usize },
    UnknownConstant(String),
    UnknownFunction(String),
    FunctionArity { function: String, expected: usize, found: usize },
    UnknownName(ElemId),
    UnknownNode(String),
    /// `~` occurs in a formula evaluated intuitionistically.
    NegationNotAllowed,
    /// The formula is not closed where a closed one is required.
    NotClosed(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnknownPredicate(p) => write!(f, "unresolved predicate `{p}`"),
            EvalError::PredicateArity { predicate, expected, found } => {
                write!(f, "`{predicate}` takes {expected} argument(s), given {found}")
            }
            EvalError::UnknownConstant(c) => write!(f, "unresolved constant `{c}`"),
            EvalError::UnknownFunction(g) => write!(f, "unresolved function `{g}`"),
            EvalError::FunctionArity { function, expected, found } => {
                write!(f, "`{function}` takes {expected} argument(s), given {found}")
            }
            EvalError::UnknownName(d) => write!(f, "name @{d} does not denote a domain element"),
            EvalError::UnknownNode(k) => write!(f, "unknown node `{k}`"),
            EvalError::NegationNotAllowed => f.write_str("`~` is not part of the intuitionistic language"),
            EvalError::NotClosed(x) => write!(f, "variable `{x}` is free"),
        }
    }
}

impl core::error::Error for EvalError {}

#[derive(Clone, Debug)]
enum CTerm {
    Slot(usize),
    Const(ElemId),
    Name(ElemId),
    App(String, Vec<CTerm>),
}

#[derive(Clone, Debug)]
enum Node {
    Top,
    Bot,
    Atom(String, Vec<CTerm>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Not { id: usize, slots: Vec<usize>, body: Box<Node> },
    Forall(QuantMode, Box<Node>),
    Exists(QuantMode, Box<Node>),
}

static NEXT_UID: AtomicUsize = AtomicUsize::new(0);

/// A formula resolved against a signature and interpretation, with
/// quantifier modes fixed and variables mapped to environment slots.
#[derive(Clone, Debug)]
pub struct Compiled {
    uid: usize,
    root: Node,
    free: Vec<String>,
}

impl Compiled {
    /// Free variables, in slot order.
    pub fn free(&self) -> &[String] {
        &self.free
    }
}

struct Compiler<'a> {
    sig: &'a Signature,
    interp: &'a Interpretation,
    elements: &'a [ElemId],
    allow_neg: bool,
    scope: Vec<String>,
    negs: BTreeMap<Formula, usize>,
}

impl<'a> Compiler<'a> {
    fn term(&self, t: &Term) -> Result<CTerm, EvalError> {
        Ok(match t {
            Term::Var(x) => match self.scope.iter().rposition(|y| y == x) {
                Some(i) => CTerm::Slot(i),
                None => return Err(EvalError::NotClosed(x.clone())),
            },
            Term::Const(c) => {
                if !self.sig.is_constant(c) {
                    return Err(EvalError::UnknownConstant(c.clone()));
                }
                CTerm::Const(*self.interp.constants.get(c).ok_or_else(|| EvalError::UnknownConstant(c.clone()))?)
            }
            Term::Name(d) => {
                if self.elements.binary_search(d).is_err() {
                    return Err(EvalError::UnknownName(*d));
                }
                CTerm::Name(*d)
            }
            Term::App(g, args) => {
                let n = self.sig.function_arity(g).ok_or_else(|| EvalError::UnknownFunction(g.clone()))?;
                if n != args.len() {
                    return Err(EvalError::FunctionArity { function: g.clone(), expected: n, found: args.len() });
                }
                CTerm::App(g.clone(), args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?)
            }
        })
    }

    fn formula(&mut self, a: &Formula) -> Result<Node, EvalError> {
        Ok(match a {
            Formula::Top => Node::Top,
            Formula::Bot => Node::Bot,
            Formula::Atom(p, args) => {
                let n = self.sig.predicate_arity(p).ok_or_else(|| EvalError::UnknownPredicate(p.clone()))?;
                if n != args.len() {
                    return Err(EvalError::PredicateArity { predicate: p.clone(), expected: n, found: args.len() });
                }
                Node::Atom(p.clone(), args.iter().map(|t| self.term(t)).collect::<Result<_, _>>()?)
            }
            Formula::And(b, c) => Node::And(Box::new(self.formula(b)?), Box::new(self.formula(c)?)),
            Formula::Or(b, c) => Node::Or(Box::new(self.formula(b)?), Box::new(self.formula(c)?)),
            Formula::Implies(b, c) => Node::Implies(Box::new(self.formula(b)?), Box::new(self.formula(c)?)),
            Formula::Not(b) => {
                if !self.allow_neg {
                    return Err(EvalError::NegationNotAllowed);
                }
                let key = a.alpha_normal();
                let next = self.negs.len();
                let id = *self.negs.entry(key).or_insert(next);
                let slots = b
                    .free_vars()
                    .iter()
                    .map(|x| self.scope.iter().rposition(|y| y == x).ok_or_else(|| EvalError::NotClosed(x.clone())))
                    .collect::<Result<_, _>>()?;
                Node::Not { id, slots, body: Box::new(self.formula(b)?) }
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let mode = quantifier_mode(b, x);
                self.scope.push(x.clone());
                let body = self.formula(b);
                self.scope.pop();
                let body = Box::new(body?);
                if matches!(a, Formula::Forall(..)) {
                    Node::Forall(mode, body)
                } else {
                    Node::Exists(mode, body)
                }
            }
        })
    }
}

/// Which forcing clauses to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clauses {
    /// Time-gapped implication, global negation, E-guarded local quantifiers.
    Strict,
    /// Kripke clauses over growing domains.
    Intuitionistic,
}

/// A finite tree structure the evaluator can run over.
pub trait ForcingStructure {
    fn signature(&self) -> &Signature;
    fn frame(&self) -> &Frame;
    fn elements(&self) -> &[ElemId];
    fn interpretation(&self) -> &Interpretation;
    fn atom_nodes(&self, p: &str, tuple: &[ElemId]) -> NodeSet;
    /// Nodes whose domain contains `d`.
    fn domain_mask(&self, d: ElemId) -> NodeSet;
    fn clauses(&self) -> Clauses;
}

impl ForcingStructure for StrictFinModel {
    fn signature(&self) -> &Signature {
        StrictFinModel::signature(self)
    }
    fn frame(&self) -> &Frame {
        StrictFinModel::frame(self)
    }
    fn elements(&self) -> &[ElemId] {
        self.domain()
    }
    fn interpretation(&self) -> &Interpretation {
        StrictFinModel::interpretation(self)
    }
    fn atom_nodes(&self, p: &str, tuple: &[ElemId]) -> NodeSet {
        self.extension(p, tuple)
    }
    fn domain_mask(&self, _d: ElemId) -> NodeSet {
        StrictFinModel::frame(self).all()
    }
    fn clauses(&self) -> Clauses {
        Clauses::Strict
    }
}

impl ForcingStructure for IntuitionisticModel {
    fn signature(&self) -> &Signature {
        IntuitionisticModel::signature(self)
    }
    fn frame(&self) -> &Frame {
        IntuitionisticModel::frame(self)
    }
    fn elements(&self) -> &[ElemId] {
        IntuitionisticModel::elements(self)
    }
    fn interpretation(&self) -> &Interpretation {
        IntuitionisticModel::interpretation(self)
    }
    fn atom_nodes(&self, p: &str, tuple: &[ElemId]) -> NodeSet {
        self.extension(p, tuple)
    }
    fn domain_mask(&self, d: ElemId) -> NodeSet {
        IntuitionisticModel::domain_mask(self, d)
    }
    fn clauses(&self) -> Clauses {
        Clauses::Intuitionistic
    }
}

/// Compiles `a` for evaluation in `m`; `free` lists the variables that
/// will be supplied by the environment, in slot order.
pub fn compile<S: ForcingStructure + ?Sized>(m: &S, a: &Formula, free: &[String]) -> Result<Compiled, EvalError> {
    let mut c = Compiler {
        sig: m.signature(),
        interp: m.interpretation(),
        elements: m.elements(),
        allow_neg: m.clauses() == Clauses::Strict,
        scope: free.to_vec(),
        negs: BTreeMap::new(),
    };
    let root = c.formula(a)?;
    Ok(Compiled { uid: NEXT_UID.fetch_add(1, Ordering::Relaxed), root, free: free.to_vec() })
}

/// An evaluation session over one structure, memoizing the model-wide
/// verdicts of `~` subformulas.
pub struct Session<'m, S: ForcingStructure + ?Sized> {
    model: &'m S,
    all: NodeSet,
    memo: BTreeMap<(usize, usize, Vec<ElemId>), bool>,
    existence: Vec<NodeSet>,
    masks: Vec<NodeSet>,
}

impl<'m, S: ForcingStructure + ?Sized> Session<'m, S> {
    pub fn new(model: &'m S) -> Self {
        let elements = model.elements();
        let existence = elements.iter().map(|&d| model.atom_nodes(EXISTENCE, &[d])).collect();
        let masks = elements.iter().map(|&d| model.domain_mask(d)).collect();
        Session { model, all: model.frame().all(), memo: BTreeMap::new(), existence, masks }
    }

    pub fn model(&self) -> &'m S {
        self.model
    }

    /// Nodes forcing the compiled formula under `env` (one element per
    /// free variable).
    pub fn eval(&mut self, c: &Compiled, env: &[ElemId]) -> NodeSet {
        let mut stack = env.to_vec();
        self.node(c.uid, &c.root, &mut stack)
    }

    /// Nodes forcing the universal closure of `a`.
    pub fn forced_nodes(&mut self, a: &Formula) -> Result<NodeSet, EvalError> {
        let c = compile(self.model, &a.universal_closure(), &[])?;
        Ok(self.eval(&c, &[]))
    }

    fn term(&self, t: &CTerm, env: &[ElemId]) -> Option<ElemId> {
        match t {
            CTerm::Slot(i) => Some(env[*i]),
            CTerm::Const(d) | CTerm::Name(d) => Some(*d),
            CTerm::App(g, args) => {
                let vals = args.iter().map(|a| self.term(a, env)).collect::<Option<Vec<_>>>()?;
                self.model.interpretation().apply(g, &vals)
            }
        }
    }

    fn node(&mut self, uid: usize, n: &Node, env: &mut Vec<ElemId>) -> NodeSet {
        let frame = self.model.frame();
        let all = self.all;
        match n {
            Node::Top => all,
            Node::Bot => NodeSet::EMPTY,
            Node::Atom(p, args) => {
                let vals: Option<Vec<ElemId>> = args.iter().map(|t| self.term(t, env)).collect();
                match vals {
                    Some(v) => self.model.atom_nodes(p, &v),
                    None => NodeSet::EMPTY,
                }
            }
            Node::And(b, c) => {
                let s = self.node(uid, b, env);
                if s.is_empty() {
                    return s;
                }
                s.intersect(self.node(uid, c, env))
            }
            Node::Or(b, c) => {
                let s = self.node(uid, b, env);
                if s == all {
                    return s;
                }
                s.union(self.node(uid, c, env))
            }
            Node::Implies(b, c) => {
                let sb = self.node(uid, b, env);
                let sc = self.node(uid, c, env);
                match self.model.clauses() {
                    Clauses::Strict => frame.boxed(sb.complement(frame.len()).union(frame.reach(sc))),
                    Clauses::Intuitionistic => frame.boxed(sb.complement(frame.len()).union(sc)),
                }
            }
            Node::Not { id, slots, body } => {
                let key = (uid, *id, slots.iter().map(|&i| env[i]).collect::<Vec<_>>());
                let forced_somewhere = match self.memo.get(&key) {
                    Some(&v) => v,
                    None => {
                        let v = !self.node(uid, body, env).is_empty();
                        self.memo.insert(key, v);
                        v
                    }
                };
                if forced_somewhere {
                    NodeSet::EMPTY
                } else {
                    all
                }
            }
            Node::Forall(mode, body) => {
                let n = frame.len();
                let mut acc = all;
                for i in 0..self.model.elements().len() {
                    let d = self.model.elements()[i];
                    env.push(d);
                    let s = self.node(uid, body, env);
                    env.pop();
                    let part = match (self.model.clauses(), mode) {
                        (Clauses::Strict, QuantMode::Global) => frame.boxed(frame.reach(s)),
                        (Clauses::Strict, QuantMode::Local) => {
                            frame.boxed(self.existence[i].complement(n).union(frame.reach(s)))
                        }
                        (Clauses::Intuitionistic, _) => frame.boxed(self.masks[i].complement(n).union(s)),
                    };
                    acc = acc.intersect(part);
                    if acc.is_empty() {
                        break;
                    }
                }
                acc
            }
            Node::Exists(mode, body) => {
                let mut acc = NodeSet::EMPTY;
                for i in 0..self.model.elements().len() {
                    let d = self.model.elements()[i];
                    env.push(d);
                    let s = self.node(uid, body, env);
                    env.pop();
                    let part = match (self.model.clauses(), mode) {
                        (Clauses::Strict, QuantMode::Global) => s,
                        (Clauses::Strict, QuantMode::Local) => self.existence[i].intersect(s),
                        (Clauses::Intuitionistic, _) => self.masks[i].intersect(s),
                    };
                    acc = acc.union(part);
                    if acc == all {
                        break;
                    }
                }
                acc
            }
        }
    }
}

/// Resolves a node name.
pub fn node_index<S: ForcingStructure + ?Sized>(m: &S, name: &str) -> Result<usize, EvalError> {
    m.frame().index_of(name).ok_or_else(|| EvalError::UnknownNode(name.to_string()))
}
