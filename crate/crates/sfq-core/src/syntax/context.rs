//! Formula contexts with a single hole.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::formula::{CaptureError, Formula};
use super::term::Term;

/// Binary connectives that can carry a hole on either side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    And,
    Or,
    Implies,
}

impl Connective {
    pub fn build(self, a: Formula, b: Formula) -> Formula {
        match self {
            Connective::And => Formula::and(a, b),
            Connective::Or => Formula::or(a, b),
            Connective::Implies => Formula::implies(a, b),
        }
    }
}

/// A formula with exactly one hole `*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormulaContext {
    Hole,
    /// `F op A`
    Left(Connective, Box<FormulaContext>, Box<Formula>),
    /// `A op F`
    Right(Connective, Box<Formula>, Box<FormulaContext>),
    Not(Box<FormulaContext>),
    Forall(String, Box<FormulaContext>),
    Exists(String, Box<FormulaContext>),
}

/// Which negation an analysis looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `~B`
    Neg,
    /// `B -> bot`
    Wneg,
}

impl Shape {
    pub fn apply(self, b: Formula) -> Formula {
        match self {
            Shape::Neg => Formula::not(b),
            Shape::Wneg => Formula::wneg(b),
        }
    }
}

impl FormulaContext {
    /// `F[B]`; variables of `B` may become bound.
    pub fn fill(&self, b: &Formula) -> Formula {
        match self {
            FormulaContext::Hole => b.clone(),
            FormulaContext::Left(op, f, a) => op.build(f.fill(b), (**a).clone()),
            FormulaContext::Right(op, a, f) => op.build((**a).clone(), f.fill(b)),
            FormulaContext::Not(f) => Formula::not(f.fill(b)),
            FormulaContext::Forall(x, f) => Formula::Forall(x.clone(), Box::new(f.fill(b))),
            FormulaContext::Exists(x, f) => Formula::Exists(x.clone(), Box::new(f.fill(b))),
        }
    }

    /// Whether the path to the hole passes through a quantifier on `x`.
    pub fn binds_at_hole(&self, x: &str) -> bool {
        match self {
            FormulaContext::Hole => false,
            FormulaContext::Left(_, f, _) | FormulaContext::Right(_, _, f) | FormulaContext::Not(f) => f.binds_at_hole(x),
            FormulaContext::Forall(y, f) | FormulaContext::Exists(y, f) => y == x || f.binds_at_hole(x),
        }
    }

    /// Whether a quantifier lies on the path to the hole or in a side
    /// formula.
    pub fn is_quantifier_free(&self) -> bool {
        match self {
            FormulaContext::Hole => true,
            FormulaContext::Left(_, f, a) | FormulaContext::Right(_, a, f) => f.is_quantifier_free() && a.is_quantifier_free(),
            FormulaContext::Not(f) => f.is_quantifier_free(),
            FormulaContext::Forall(..) | FormulaContext::Exists(..) => false,
        }
    }

    /// Substitutes `t` for the free occurrences of `x` in the side
    /// formulas. Returns the new context together with `B[t/x]` when the
    /// hole is not under a binder of `x`, or `B` unchanged otherwise, so
    /// that `(F[B])[t/x] = F'[B']`.
    pub fn substitute_with(&self, x: &str, t: &Term, b: &Formula) -> Result<(FormulaContext, Formula), CaptureError> {
        let tvars = t.vars();
        let ctx = self.subst_rec(x, t, &tvars)?;
        if self.binds_at_hole(x) {
            Ok((ctx, b.clone()))
        } else {
            if b.occurs_free(x) {
                if let Some(y) = self.hole_binders().into_iter().find(|y| tvars.contains(y)) {
                    return Err(CaptureError { var: x.into(), term: t.clone(), binder: y.clone() });
                }
            }
            Ok((ctx, b.substitute(x, t)?))
        }
    }

    /// Quantified variables on the path to the hole, outermost first.
    pub fn hole_binders(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                FormulaContext::Hole => return out,
                FormulaContext::Left(_, f, _) | FormulaContext::Right(_, _, f) | FormulaContext::Not(f) => cur = f,
                FormulaContext::Forall(y, f) | FormulaContext::Exists(y, f) => {
                    out.push(y.clone());
                    cur = f;
                }
            }
        }
    }

    fn subst_rec(&self, x: &str, t: &Term, tvars: &alloc::collections::BTreeSet<String>) -> Result<FormulaContext, CaptureError> {
        Ok(match self {
            FormulaContext::Hole => FormulaContext::Hole,
            FormulaContext::Left(op, f, a) => FormulaContext::Left(*op, Box::new(f.subst_rec(x, t, tvars)?), Box::new(a.substitute(x, t)?)),
            FormulaContext::Right(op, a, f) => FormulaContext::Right(*op, Box::new(a.substitute(x, t)?), Box::new(f.subst_rec(x, t, tvars)?)),
            FormulaContext::Not(f) => FormulaContext::Not(Box::new(f.subst_rec(x, t, tvars)?)),
            FormulaContext::Forall(y, f) | FormulaContext::Exists(y, f) => {
                let inner = if y == x { (**f).clone() } else { f.subst_rec(x, t, tvars)? };
                if y != x && tvars.contains(y) && f.side_occurs_free(x) {
                    return Err(CaptureError { var: x.into(), term: t.clone(), binder: y.clone() });
                }
                match self {
                    FormulaContext::Forall(..) => FormulaContext::Forall(y.clone(), Box::new(inner)),
                    _ => FormulaContext::Exists(y.clone(), Box::new(inner)),
                }
            }
        })
    }

    fn side_occurs_free(&self, x: &str) -> bool {
        match self {
            FormulaContext::Hole => false,
            FormulaContext::Left(_, f, a) | FormulaContext::Right(_, a, f) => f.side_occurs_free(x) || a.occurs_free(x),
            FormulaContext::Not(f) => f.side_occurs_free(x),
            FormulaContext::Forall(y, f) | FormulaContext::Exists(y, f) => y != x && f.side_occurs_free(x),
        }
    }
}

impl fmt::Display for FormulaContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // rendered by filling the hole with a marker predicate
        let marker = Formula::Atom(String::from("HOLE"), Vec::new());
        let text = super::print::render(&self.fill(&marker));
        f.write_str(&text.replace("HOLE", "*"))
    }
}

/// Every pair `(F, B)` with `F[~B] = a` (shape `Neg`) or `F[B -> bot] = a`
/// (shape `Wneg`), in pre-order of the occurrence.
pub fn analyses(a: &Formula, shape: Shape) -> Vec<(FormulaContext, Formula)> {
    let mut out = Vec::new();
    collect(a, shape, &mut |c| c, &mut out);
    out
}

fn collect(a: &Formula, shape: Shape, wrap: &mut dyn FnMut(FormulaContext) -> FormulaContext, out: &mut Vec<(FormulaContext, Formula)>) {
    let hit = match (shape, a) {
        (Shape::Neg, Formula::Not(b)) => Some((**b).clone()),
        (Shape::Wneg, _) => a.as_wneg().cloned(),
        _ => None,
    };
    if let Some(b) = hit {
        out.push((wrap(FormulaContext::Hole), b));
    }
    match a {
        Formula::Top | Formula::Bot | Formula::Atom(..) => {}
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            let op = match a {
                Formula::And(..) => Connective::And,
                Formula::Or(..) => Connective::Or,
                _ => Connective::Implies,
            };
            let rr = (**r).clone();
            collect(l, shape, &mut |c| wrap(FormulaContext::Left(op, Box::new(c), Box::new(rr.clone()))), out);
            let ll = (**l).clone();
            collect(r, shape, &mut |c| wrap(FormulaContext::Right(op, Box::new(ll.clone()), Box::new(c))), out);
        }
        Formula::Not(b) => collect(b, shape, &mut |c| wrap(FormulaContext::Not(Box::new(c))), out),
        Formula::Forall(x, b) => collect(b, shape, &mut |c| wrap(FormulaContext::Forall(x.clone(), Box::new(c))), out),
        Formula::Exists(x, b) => collect(b, shape, &mut |c| wrap(FormulaContext::Exists(x.clone(), Box::new(c))), out),
    }
}
