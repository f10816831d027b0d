use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::term::{Term, EXISTENCE};

/// A first-order formula.
///
/// Weak negation `wneg A` is not a constructor; it is `Implies(A, Bot)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bot,
    Atom(String, Vec<Term>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// A variable would be captured by a quantifier during substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaptureError {
    /// The substituted variable.
    pub var: String,
    /// The term being substituted.
    pub term: Term,
    /// The quantified variable that would capture part of `term`.
    pub binder: String,
}

impl fmt::Display for CaptureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "term `{}` is not free for `{}`: it would be captured by the quantifier on `{}`",
            self.term, self.var, self.binder
        )
    }
}

impl core::error::Error for CaptureError {}

impl Formula {
    pub fn atom(p: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(p.to_string(), args)
    }

    pub fn exists_pred(t: Term) -> Formula {
        Formula::Atom(EXISTENCE.to_string(), alloc::vec![t])
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    /// `A -> bot`.
    pub fn wneg(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bot)
    }

    pub fn forall(x: &str, a: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(a))
    }

    pub fn exists(x: &str, a: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(a))
    }

    /// Right-nested conjunction; `top` for an empty list.
    pub fn conjunction(items: &[Formula]) -> Formula {
        let mut it = items.iter().rev();
        match it.next() {
            None => Formula::Top,
            Some(last) => it.fold(last.clone(), |acc, f| Formula::and(f.clone(), acc)),
        }
    }

    /// The body `A` when `self` is `A -> bot`.
    pub fn as_wneg(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::Bot => Some(a),
            _ => None,
        }
    }

    /// The body `A` when `self` is `wneg wneg A`.
    pub fn as_double_wneg(&self) -> Option<&Formula> {
        self.as_wneg().and_then(Formula::as_wneg)
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Forall(..) | Formula::Exists(..))
    }

    /// Whether the formula contains no quantifier.
    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Whether `~` occurs anywhere.
    pub fn has_neg(&self) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(..) => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.has_neg() || b.has_neg(),
            Formula::Not(_) => true,
            Formula::Forall(_, a) | Formula::Exists(_, a) => a.has_neg(),
        }
    }

    /// Whether a predicate occurs anywhere.
    pub fn mentions_predicate(&self, p: &str) -> bool {
        match self {
            Formula::Top | Formula::Bot => false,
            Formula::Atom(q, _) => q == p,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.mentions_predicate(p) || b.mentions_predicate(p)
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.mentions_predicate(p),
        }
    }

    /// Number of connectives and quantifiers plus atoms.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(..) => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
        }
    }

    pub fn predicates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |p, _| {
            out.insert(p.to_string());
        });
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a str, &'a [Term])) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Atom(p, args) => f(p, args),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit_atoms(f),
        }
    }

    /// Every term occurring as an argument or inside one.
    pub fn terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |_, args| {
            for a in args {
                a.subterms(&mut out);
            }
        });
        out
    }

    /// Names `@d` mentioned anywhere.
    pub fn names(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for t in self.terms() {
            if let Term::Name(d) = t {
                out.insert(d);
            }
        }
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Atom(_, args) => {
                for t in args {
                    let mut vs = BTreeSet::new();
                    t.collect_vars(&mut vs);
                    for v in vs {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Free variables in lexicographic order.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            Formula::Top | Formula::Bot => false,
            Formula::Atom(_, args) => args.iter().any(|t| t.has_var(x)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.occurs_free(x) || b.occurs_free(x),
            Formula::Not(a) => a.occurs_free(x),
            Formula::Forall(y, a) | Formula::Exists(y, a) => y != x && a.occurs_free(x),
        }
    }

    /// Every variable name used, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Atom(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Formula::Not(a) => a.collect_all_vars(out),
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.collect_all_vars(out);
            }
        }
    }

    /// `A[t/x]`, failing if `t` is not free for `x`.
    pub fn substitute(&self, x: &str, t: &Term) -> Result<Formula, CaptureError> {
        self.substitute_all(&[(x.to_string(), t.clone())])
    }

    /// Simultaneous substitution `A[t1/x1, .., tn/xn]`.
    pub fn substitute_all(&self, subst: &[(String, Term)]) -> Result<Formula, CaptureError> {
        let tvars: Vec<BTreeSet<String>> = subst.iter().map(|(_, t)| t.vars()).collect();
        self.subst_rec(subst, &tvars)
    }

    fn subst_rec(&self, subst: &[(String, Term)], tvars: &[BTreeSet<String>]) -> Result<Formula, CaptureError> {
        Ok(match self {
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| subst_term(a, subst)).collect()),
            Formula::And(a, b) => Formula::and(a.subst_rec(subst, tvars)?, b.subst_rec(subst, tvars)?),
            Formula::Or(a, b) => Formula::or(a.subst_rec(subst, tvars)?, b.subst_rec(subst, tvars)?),
            Formula::Implies(a, b) => Formula::implies(a.subst_rec(subst, tvars)?, b.subst_rec(subst, tvars)?),
            Formula::Not(a) => Formula::not(a.subst_rec(subst, tvars)?),
            Formula::Forall(y, a) | Formula::Exists(y, a) => {
                let mut inner = Vec::new();
                let mut inner_vars = Vec::new();
                for ((x, t), vs) in subst.iter().zip(tvars) {
                    if x == y || !a.occurs_free(x) {
                        continue;
                    }
                    if vs.contains(y) {
                        return Err(CaptureError { var: x.clone(), term: t.clone(), binder: y.clone() });
                    }
                    inner.push((x.clone(), t.clone()));
                    inner_vars.push(vs.clone());
                }
                let body = if inner.is_empty() { (**a).clone() } else { a.subst_rec(&inner, &inner_vars)? };
                match self {
                    Formula::Forall(..) => Formula::Forall(y.clone(), Box::new(body)),
                    _ => Formula::Exists(y.clone(), Box::new(body)),
                }
            }
        })
    }

    /// Whether `t` is free for `x` in `self`.
    pub fn is_free_for(&self, x: &str, t: &Term) -> bool {
        self.substitute(x, t).is_ok()
    }

    /// Renames bound variables so that binders are pairwise distinct and
    /// distinct from the free variables.
    pub fn alpha_rename(&self) -> Formula {
        let mut used: BTreeSet<String> = self.free_vars();
        let mut all = self.all_vars();
        self.rename_rec(&mut used, &mut all)
    }

    fn rename_rec(&self, used: &mut BTreeSet<String>, all: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(..) => self.clone(),
            Formula::And(a, b) => {
                let a = a.rename_rec(used, all);
                Formula::and(a, b.rename_rec(used, all))
            }
            Formula::Or(a, b) => {
                let a = a.rename_rec(used, all);
                Formula::or(a, b.rename_rec(used, all))
            }
            Formula::Implies(a, b) => {
                let a = a.rename_rec(used, all);
                Formula::implies(a, b.rename_rec(used, all))
            }
            Formula::Not(a) => Formula::not(a.rename_rec(used, all)),
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let (name, body) = if used.contains(x) {
                    let mut fresh = format!("{x}'");
                    while all.contains(&fresh) || used.contains(&fresh) {
                        fresh.push('\'');
                    }
                    all.insert(fresh.clone());
                    let body = a.substitute(x, &Term::Var(fresh.clone())).expect("fresh variable cannot be captured");
                    (fresh, body)
                } else {
                    (x.clone(), (**a).clone())
                };
                used.insert(name.clone());
                let body = body.rename_rec(used, all);
                match self {
                    Formula::Forall(..) => Formula::Forall(name, Box::new(body)),
                    _ => Formula::Exists(name, Box::new(body)),
                }
            }
        }
    }

    /// Canonical alpha-variant: binders renamed by nesting depth.
    ///
    /// Two formulas are alpha-equivalent iff their normal forms are equal.
    pub fn alpha_normal(&self) -> Formula {
        self.normal_rec(0)
    }

    fn normal_rec(&self, depth: usize) -> Formula {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(..) => self.clone(),
            Formula::And(a, b) => Formula::and(a.normal_rec(depth), b.normal_rec(depth)),
            Formula::Or(a, b) => Formula::or(a.normal_rec(depth), b.normal_rec(depth)),
            Formula::Implies(a, b) => Formula::implies(a.normal_rec(depth), b.normal_rec(depth)),
            Formula::Not(a) => Formula::not(a.normal_rec(depth)),
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let name = format!("#{depth}");
                let body = rename_free(a, x, &name).normal_rec(depth + 1);
                match self {
                    Formula::Forall(..) => Formula::Forall(name, Box::new(body)),
                    _ => Formula::Exists(name, Box::new(body)),
                }
            }
        }
    }

    /// Prefixes universal quantifiers over the free variables, the
    /// lexicographically first outermost.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars().into_iter().rev().fold(self.clone(), |acc, x| Formula::Forall(x, Box::new(acc)))
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(..) => Vec::new(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => alloc::vec![&**a, &**b],
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => alloc::vec![&**a],
        }
    }

    /// All subformula occurrences in pre-order, including `self`.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            for c in f.children().into_iter().rev() {
                stack.push(c);
            }
        }
        out
    }
}

fn subst_term(t: &Term, subst: &[(String, Term)]) -> Term {
    match t {
        Term::Var(y) => match subst.iter().find(|(x, _)| x == y) {
            Some((_, s)) => s.clone(),
            None => t.clone(),
        },
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| subst_term(a, subst)).collect()),
        other => other.clone(),
    }
}

/// Renames free occurrences of `x` to `y`, where `y` is known not to clash.
fn rename_free(f: &Formula, x: &str, y: &str) -> Formula {
    match f {
        Formula::Top | Formula::Bot => f.clone(),
        Formula::Atom(p, args) => {
            let t = Term::Var(y.to_string());
            Formula::Atom(p.clone(), args.iter().map(|a| a.substitute(x, &t)).collect())
        }
        Formula::And(a, b) => Formula::and(rename_free(a, x, y), rename_free(b, x, y)),
        Formula::Or(a, b) => Formula::or(rename_free(a, x, y), rename_free(b, x, y)),
        Formula::Implies(a, b) => Formula::implies(rename_free(a, x, y), rename_free(b, x, y)),
        Formula::Not(a) => Formula::not(rename_free(a, x, y)),
        Formula::Forall(z, a) | Formula::Exists(z, a) => {
            let body = if z == x { (**a).clone() } else { rename_free(a, x, y) };
            match f {
                Formula::Forall(..) => Formula::Forall(z.clone(), Box::new(body)),
                _ => Formula::Exists(z.clone(), Box::new(body)),
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print::render(self))
    }
}
