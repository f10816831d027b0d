use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Identifier of a domain element.
pub type ElemId = u32;

/// Name of the existence predicate.
pub const EXISTENCE: &str = "E";

/// A first-order term.
///
/// `Name(d)` is the name of domain element `d`, written `@d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    Name(ElemId),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(x.to_string())
    }

    pub fn constant(c: &str) -> Term {
        Term::Const(c.to_string())
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.to_string(), args)
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) | Term::Name(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    /// Whether the term mentions no domain names.
    pub fn is_base(&self) -> bool {
        match self {
            Term::Name(_) => false,
            Term::Var(_) | Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_base),
        }
    }

    pub fn has_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => y == x,
            Term::Const(_) | Term::Name(_) => false,
            Term::App(_, args) => args.iter().any(|t| t.has_var(x)),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Const(_) | Term::Name(_) => {}
            Term::App(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Replace every occurrence of variable `x` by `t`.
    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => t.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(x, t)).collect()),
            other => other.clone(),
        }
    }

    /// Number of occurrences of `t` as a subterm of `self`.
    pub fn count_occurrences(&self, t: &Term) -> usize {
        if self == t {
            return 1;
        }
        match self {
            Term::App(_, args) => args.iter().map(|a| a.count_occurrences(t)).sum(),
            _ => 0,
        }
    }

    /// Nesting depth of function applications; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn subterms(&self, out: &mut Vec<Term>) {
        out.push(self.clone());
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.subterms(out));
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) | Term::Const(x) => f.write_str(x),
            Term::Name(d) => write!(f, "@{d}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Symbols of a first-order language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    constants: Vec<String>,
    functions: Vec<(String, usize)>,
    predicates: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignatureError {
    DuplicateSymbol(String),
    BadExistenceArity(usize),
    ZeroArityFunction(String),
    BadSymbolName(String),
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::DuplicateSymbol(s) => write!(f, "symbol `{s}` declared twice"),
            SignatureError::BadExistenceArity(n) => write!(f, "predicate E must be unary, declared with arity {n}"),
            SignatureError::ZeroArityFunction(s) => write!(f, "function `{s}` must have arity at least 1"),
            SignatureError::BadSymbolName(s) => write!(f, "`{s}` is not a valid symbol name for its kind"),
        }
    }
}

impl core::error::Error for SignatureError {}

fn is_lower_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn is_upper_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Signature {
    /// Builds a signature; `E/1` is added when absent.
    ///
    /// Predicates may be nullary (propositional letters). Functions need
    /// arity at least one; nullary function symbols are constants.
    pub fn new(
        constants: Vec<String>,
        functions: Vec<(String, usize)>,
        mut predicates: Vec<(String, usize)>,
    ) -> Result<Signature, SignatureError> {
        match predicates.iter().find(|(p, _)| p == EXISTENCE) {
            Some((_, 1)) => {}
            Some((_, n)) => return Err(SignatureError::BadExistenceArity(*n)),
            None => predicates.insert(0, (EXISTENCE.to_string(), 1)),
        }
        let mut seen = BTreeSet::new();
        for c in &constants {
            if !is_lower_ident(c) {
                return Err(SignatureError::BadSymbolName(c.clone()));
            }
            if !seen.insert(c.clone()) {
                return Err(SignatureError::DuplicateSymbol(c.clone()));
            }
        }
        for (f, n) in &functions {
            if !is_lower_ident(f) {
                return Err(SignatureError::BadSymbolName(f.clone()));
            }
            if *n == 0 {
                return Err(SignatureError::ZeroArityFunction(f.clone()));
            }
            if !seen.insert(f.clone()) {
                return Err(SignatureError::DuplicateSymbol(f.clone()));
            }
        }
        for (p, _) in &predicates {
            if !is_upper_ident(p) {
                return Err(SignatureError::BadSymbolName(p.clone()));
            }
            if !seen.insert(p.clone()) {
                return Err(SignatureError::DuplicateSymbol(p.clone()));
            }
        }
        Ok(Signature { constants, functions, predicates })
    }

    /// The signature with only `E`.
    pub fn existence_only() -> Signature {
        Signature::new(Vec::new(), Vec::new(), Vec::new()).expect("E-only signature is valid")
    }

    /// Convenience constructor from string slices.
    pub fn from_parts(constants: &[&str], functions: &[(&str, usize)], predicates: &[(&str, usize)]) -> Result<Signature, SignatureError> {
        Signature::new(
            constants.iter().map(|c| c.to_string()).collect(),
            functions.iter().map(|(f, n)| (f.to_string(), *n)).collect(),
            predicates.iter().map(|(p, n)| (p.to_string(), *n)).collect(),
        )
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn functions(&self) -> &[(String, usize)] {
        &self.functions
    }

    pub fn predicates(&self) -> &[(String, usize)] {
        &self.predicates
    }

    pub fn is_constant(&self, c: &str) -> bool {
        self.constants.iter().any(|x| x == c)
    }

    pub fn function_arity(&self, f: &str) -> Option<usize> {
        self.functions.iter().find(|(g, _)| g == f).map(|(_, n)| *n)
    }

    pub fn predicate_arity(&self, p: &str) -> Option<usize> {
        self.predicates.iter().find(|(q, _)| q == p).map(|(_, n)| *n)
    }

    /// Union of two signatures; fails on conflicting arities.
    pub fn merge(&self, other: &Signature) -> Result<Signature, SignatureError> {
        let mut constants = self.constants.clone();
        for c in &other.constants {
            if !constants.contains(c) {
                constants.push(c.clone());
            }
        }
        let mut functions = self.functions.clone();
        for (f, n) in &other.functions {
            match self.function_arity(f) {
                Some(m) if m == *n => {}
                Some(_) => return Err(SignatureError::DuplicateSymbol(f.clone())),
                None => functions.push((f.clone(), *n)),
            }
        }
        let mut predicates = self.predicates.clone();
        for (p, n) in &other.predicates {
            match self.predicate_arity(p) {
                Some(m) if m == *n => {}
                Some(_) => return Err(SignatureError::DuplicateSymbol(p.clone())),
                None => predicates.push((p.clone(), *n)),
            }
        }
        Signature::new(constants, functions, predicates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn existence_is_added() {
        let s = Signature::from_parts(&["c"], &[], &[("P", 1)]).unwrap();
        assert_eq!(s.predicate_arity("E"), Some(1));
        assert_eq!(s.predicate_arity("P"), Some(1));
    }

    #[test]
    fn rejects_bad_signatures() {
        assert_eq!(
            Signature::from_parts(&[], &[], &[("E", 2)]),
            Err(SignatureError::BadExistenceArity(2))
        );
        assert!(matches!(
            Signature::from_parts(&["c", "c"], &[], &[]),
            Err(SignatureError::DuplicateSymbol(_))
        ));
        assert!(matches!(
            Signature::from_parts(&[], &[("f", 0)], &[]),
            Err(SignatureError::ZeroArityFunction(_))
        ));
        assert!(matches!(
            Signature::from_parts(&["C"], &[], &[]),
            Err(SignatureError::BadSymbolName(_))
        ));
    }

    #[test]
    fn term_helpers() {
        let t = Term::app("f", vec![Term::var("x"), Term::app("g", vec![Term::Name(3)])]);
        assert_eq!(alloc::format!("{t}"), "f(x,g(@3))");
        assert!(!t.is_closed());
        assert!(!t.is_base());
        assert_eq!(t.depth(), 2);
        let s = t.substitute("x", &Term::constant("c"));
        assert!(s.is_closed());
        assert_eq!(s.count_occurrences(&Term::constant("c")), 1);
    }
}
