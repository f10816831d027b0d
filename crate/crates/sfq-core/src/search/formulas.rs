//! Random closed formulas, optionally confined to a fragment.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::syntax::{quantifier_mode, Formula, QuantMode, Signature, Term, EXISTENCE};

const VARS: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// Parameters of the random formula generators.
#[derive(Clone, Debug)]
pub struct FormulaGen {
    pub signature: Signature,
    pub max_depth: usize,
    pub quantifiers: bool,
    /// Whether `~` may appear outside the fragments that require it.
    pub negation: bool,
    /// Whether atoms may use `E`.
    pub existence: bool,
}

impl FormulaGen {
    pub fn new(signature: Signature, max_depth: usize) -> FormulaGen {
        FormulaGen { signature, max_depth, quantifiers: true, negation: true, existence: true }
    }

    fn predicates(&self) -> Vec<(String, usize)> {
        self.signature.predicates().iter().filter(|(p, _)| self.existence || p != EXISTENCE).cloned().collect()
    }

    fn term(&self, rng: &mut impl Rng, scope: &[String]) -> Term {
        let consts = self.signature.constants();
        let funcs = self.signature.functions();
        let pool = scope.len() + consts.len();
        if pool == 0 || (!funcs.is_empty() && rng.gen_ratio(1, 6)) {
            if let Some((f, n)) = funcs.get(rng.gen_range(0..funcs.len().max(1))) {
                if pool > 0 {
                    let args = (0..*n).map(|_| self.leaf_term(rng, scope)).collect();
                    return Term::app(f, args);
                }
            }
        }
        self.leaf_term(rng, scope)
    }

    fn leaf_term(&self, rng: &mut impl Rng, scope: &[String]) -> Term {
        let consts = self.signature.constants();
        let i = rng.gen_range(0..scope.len() + consts.len());
        if i < scope.len() {
            Term::Var(scope[i].clone())
        } else {
            Term::Const(consts[i - scope.len()].clone())
        }
    }

    fn atom(&self, rng: &mut impl Rng, scope: &[String]) -> Formula {
        let preds = self.predicates();
        let usable: Vec<&(String, usize)> =
            preds.iter().filter(|(_, n)| *n == 0 || !scope.is_empty() || !self.signature.constants().is_empty()).collect();
        if usable.is_empty() {
            return if rng.gen_bool(0.5) { Formula::Top } else { Formula::Bot };
        }
        let (p, n) = usable[rng.gen_range(0..usable.len())];
        Formula::Atom(p.clone(), (0..*n).map(|_| self.term(rng, scope)).collect())
    }

    fn fresh(scope: &[String]) -> Option<String> {
        VARS.iter().find(|v| !scope.iter().any(|s| s == *v)).map(|v| String::from(*v))
    }

    /// An arbitrary closed formula.
    pub fn any(&self, rng: &mut impl Rng) -> Formula {
        self.any_in(rng, self.max_depth, &mut Vec::new())
    }

    fn any_in(&self, rng: &mut impl Rng, depth: usize, scope: &mut Vec<String>) -> Formula {
        if depth == 0 {
            return match rng.gen_range(0..10) {
                0 => Formula::Top,
                1 => Formula::Bot,
                _ => self.atom(rng, scope),
            };
        }
        let choices = if self.quantifiers { 9 } else { 7 };
        match rng.gen_range(0..choices) {
            0 => self.atom(rng, scope),
            1 => Formula::and(self.any_in(rng, depth - 1, scope), self.any_in(rng, depth - 1, scope)),
            2 => Formula::or(self.any_in(rng, depth - 1, scope), self.any_in(rng, depth - 1, scope)),
            3 | 4 => Formula::implies(self.any_in(rng, depth - 1, scope), self.any_in(rng, depth - 1, scope)),
            5 if self.negation => Formula::not(self.any_in(rng, depth - 1, scope)),
            5 | 6 => Formula::wneg(self.any_in(rng, depth - 1, scope)),
            k => self.quantified(rng, k == 7, scope, |g, r, s| g.any_in(r, depth - 1, s))
                .unwrap_or_else(|| self.atom(rng, scope)),
        }
    }

    fn quantified<R: Rng>(
        &self,
        rng: &mut R,
        universal: bool,
        scope: &mut Vec<String>,
        body: impl FnOnce(&Self, &mut R, &mut Vec<String>) -> Formula,
    ) -> Option<Formula> {
        let x = Self::fresh(scope)?;
        scope.push(x.clone());
        let b = body(self, rng, scope);
        scope.pop();
        Some(if universal { Formula::Forall(x, Box::new(b)) } else { Formula::Exists(x, Box::new(b)) })
    }

    /// A closed global negative formula.
    pub fn gn(&self, rng: &mut impl Rng) -> Formula {
        self.gn_in(rng, self.max_depth, &mut Vec::new())
    }

    fn gn_in(&self, rng: &mut impl Rng, depth: usize, scope: &mut Vec<String>) -> Formula {
        if depth == 0 {
            return if rng.gen_ratio(1, 5) { Formula::Bot } else { Formula::not(self.atom(rng, scope)) };
        }
        let choices = if self.quantifiers { 7 } else { 5 };
        match rng.gen_range(0..choices) {
            0 | 1 => Formula::not(self.any_in(rng, depth - 1, scope)),
            2 => Formula::and(self.gn_in(rng, depth - 1, scope), self.gn_in(rng, depth - 1, scope)),
            3 => Formula::or(self.gn_in(rng, depth - 1, scope), self.gn_in(rng, depth - 1, scope)),
            4 => Formula::implies(self.gn_in(rng, depth - 1, scope), self.gn_in(rng, depth - 1, scope)),
            k => self.quantified(rng, k == 5, scope, |g, r, s| g.gn_in(r, depth - 1, s))
                .unwrap_or(Formula::Bot),
        }
    }

    /// A closed formula of the stable fragment.
    pub fn st(&self, rng: &mut impl Rng) -> Formula {
        self.st_in(rng, self.max_depth, &mut Vec::new())
    }

    fn st_in(&self, rng: &mut impl Rng, depth: usize, scope: &mut Vec<String>) -> Formula {
        if depth == 0 {
            return match rng.gen_range(0..3) {
                0 => Formula::Top,
                _ => self.gn_in(rng, 0, scope),
            };
        }
        let choices = if self.quantifiers { 7 } else { 6 };
        match rng.gen_range(0..choices) {
            0 => self.gn_in(rng, depth, scope),
            1 => Formula::and(self.st_in(rng, depth - 1, scope), self.st_in(rng, depth - 1, scope)),
            2 => Formula::or(self.st_in(rng, depth - 1, scope), self.gn_in(rng, depth - 1, scope)),
            3 => Formula::or(self.gn_in(rng, depth - 1, scope), self.st_in(rng, depth - 1, scope)),
            4 | 5 => Formula::implies(self.any_in(rng, depth - 1, scope), self.any_in(rng, depth - 1, scope)),
            _ => self
                .quantified(rng, true, scope, |g, r, s| g.any_in(r, depth - 1, s))
                .unwrap_or(Formula::Top),
        }
    }

    /// A closed formula of the prevalent stable fragment.
    pub fn st_p(&self, rng: &mut impl Rng) -> Formula {
        self.st_p_in(rng, self.max_depth, &mut Vec::new())
    }

    fn st_p_in(&self, rng: &mut impl Rng, depth: usize, scope: &mut Vec<String>) -> Formula {
        if depth == 0 {
            return self.st_in(rng, 0, scope);
        }
        let choices = if self.quantifiers { 4 } else { 3 };
        match rng.gen_range(0..choices) {
            0 => self.st_in(rng, depth, scope),
            1 | 2 => Formula::or(self.st_p_in(rng, depth - 1, scope), self.st_p_in(rng, depth - 1, scope)),
            _ => {
                let Some(x) = Self::fresh(scope) else {
                    return self.st_in(rng, depth, scope);
                };
                scope.push(x.clone());
                let mut body = self.st_p_in(rng, depth - 1, scope);
                if quantifier_mode(&body, &x) != QuantMode::Global {
                    scope.pop();
                    let rest = self.st_p_in(rng, depth - 1, scope);
                    scope.push(x.clone());
                    let guard = self.atom_with(rng, scope, &x);
                    body = match guard {
                        Some(g) => Formula::or(rest, Formula::not(g)),
                        None => {
                            scope.pop();
                            return self.st_in(rng, depth, scope);
                        }
                    };
                }
                scope.pop();
                Formula::Exists(x, Box::new(body))
            }
        }
    }

    /// An atom mentioning variable `x`, if some predicate takes arguments.
    fn atom_with(&self, rng: &mut impl Rng, scope: &[String], x: &str) -> Option<Formula> {
        let preds: Vec<(String, usize)> = self.predicates().into_iter().filter(|(_, n)| *n > 0).collect();
        if preds.is_empty() {
            return None;
        }
        let (p, n) = &preds[rng.gen_range(0..preds.len())];
        let at = rng.gen_range(0..*n);
        let args = (0..*n).map(|i| if i == at { Term::var(x) } else { self.term(rng, scope) }).collect();
        Some(Formula::Atom(p.clone(), args))
    }
}
