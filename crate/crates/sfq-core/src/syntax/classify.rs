//! Fragment classifiers and occurrence analysis.

use alloc::string::String;
use alloc::vec::Vec;

use super::formula::Formula;
use super::term::Term;

/// Whether `a` is global negative:
/// `N ::= bot | ~A | N & N | N | N | N -> N | forall x. N | exists x. N`.
pub fn is_gn(a: &Formula) -> bool {
    match a {
        Formula::Bot | Formula::Not(_) => true,
        Formula::Top | Formula::Atom(..) => false,
        Formula::And(b, c) | Formula::Or(b, c) | Formula::Implies(b, c) => is_gn(b) && is_gn(c),
        Formula::Forall(_, b) | Formula::Exists(_, b) => is_gn(b),
    }
}

/// Whether `a` is in the stable fragment
/// `S ::= top | N | S & S | S | N | N | S | A -> A | forall x. A`.
pub fn is_st(a: &Formula) -> bool {
    if is_gn(a) {
        return true;
    }
    match a {
        Formula::Top | Formula::Implies(..) | Formula::Forall(..) => true,
        Formula::And(b, c) => is_st(b) && is_st(c),
        Formula::Or(b, c) => (is_st(b) && is_gn(c)) || (is_gn(b) && is_st(c)),
        _ => false,
    }
}

/// How the primed constituents of the prevalent stable fragment are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StMode {
    /// `S'` ranges over the prevalent stable fragment itself.
    Recursive,
    /// `S'` ranges over the stable fragment only.
    Strict,
}

/// Whether `a` is in `S_P ::= S | S' | S' | exists x. S'` (global `x`).
pub fn is_st_p(a: &Formula, mode: StMode) -> bool {
    if is_st(a) {
        return true;
    }
    let inner = |b: &Formula| match mode {
        StMode::Recursive => is_st_p(b, mode),
        StMode::Strict => is_st(b),
    };
    match a {
        Formula::Or(b, c) => inner(b) && inner(c),
        Formula::Exists(x, b) => quantifier_mode(b, x) == QuantMode::Global && inner(b),
        _ => false,
    }
}

/// Result of [`classify_st`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StClass {
    None,
    St,
    StP,
}

/// `St` for the stable fragment, `StP` for the prevalent stable fragment
/// minus the stable fragment, `None` otherwise.
pub fn classify_st(a: &Formula, mode: StMode) -> StClass {
    if is_st(a) {
        StClass::St
    } else if is_st_p(a, mode) {
        StClass::StP
    } else {
        StClass::None
    }
}

/// How a variable or term occurs in a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OccurrenceMode {
    /// Every free occurrence lies inside a GN subformula.
    GlobalOnly,
    /// Some free occurrence lies outside every GN subformula.
    Local,
    /// No free occurrence.
    Absent,
}

/// Which clause a quantifier uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuantMode {
    Global,
    Local,
}

/// Free occurrences of a term, split by whether they lie inside a GN
/// subformula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OccurrenceCounts {
    pub global: usize,
    pub non_global: usize,
}

impl OccurrenceCounts {
    pub fn mode(self) -> OccurrenceMode {
        if self.global + self.non_global == 0 {
            OccurrenceMode::Absent
        } else if self.non_global == 0 {
            OccurrenceMode::GlobalOnly
        } else {
            OccurrenceMode::Local
        }
    }
}

/// Counts the free occurrences of `t` in `a`.
pub fn occurrence_counts(a: &Formula, t: &Term) -> OccurrenceCounts {
    let tvars = t.vars();
    let mut counts = OccurrenceCounts::default();
    count_rec(a, t, &tvars, false, &mut counts);
    counts
}

fn count_rec(a: &Formula, t: &Term, tvars: &alloc::collections::BTreeSet<String>, inside_gn: bool, out: &mut OccurrenceCounts) {
    let global = inside_gn || is_gn(a);
    match a {
        Formula::Top | Formula::Bot => {}
        Formula::Atom(_, args) => {
            let n: usize = args.iter().map(|s| s.count_occurrences(t)).sum();
            if global {
                out.global += n;
            } else {
                out.non_global += n;
            }
        }
        Formula::And(b, c) | Formula::Or(b, c) | Formula::Implies(b, c) => {
            count_rec(b, t, tvars, global, out);
            count_rec(c, t, tvars, global, out);
        }
        Formula::Not(b) => count_rec(b, t, tvars, global, out),
        Formula::Forall(y, b) | Formula::Exists(y, b) => {
            if !tvars.contains(y) {
                count_rec(b, t, tvars, global, out);
            }
        }
    }
}

/// Occurrence mode of variable `x` in `a`.
pub fn occurrence_mode(a: &Formula, x: &str) -> OccurrenceMode {
    occurrence_counts(a, &Term::Var(x.into())).mode()
}

/// Mode of the quantifier `Qx` binding body `a`; vacuous binding is local.
pub fn quantifier_mode(a: &Formula, x: &str) -> QuantMode {
    match occurrence_mode(a, x) {
        OccurrenceMode::GlobalOnly => QuantMode::Global,
        OccurrenceMode::Local | OccurrenceMode::Absent => QuantMode::Local,
    }
}

/// One line of an occurrence report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceEntry {
    pub term: Term,
    pub counts: OccurrenceCounts,
}

impl OccurrenceEntry {
    /// `global`, `local`, or `mixed` (both kinds present).
    pub fn label(&self) -> &'static str {
        match (self.counts.global > 0, self.counts.non_global > 0) {
            (true, false) => "global",
            (false, true) => "local",
            (true, true) => "mixed",
            (false, false) => "absent",
        }
    }
}

/// Occurrence report for every free variable and every closed term
/// occurring in `a`, in order of first appearance.
pub fn occurrence_report(a: &Formula) -> Vec<OccurrenceEntry> {
    let free = a.free_vars();
    let mut seen: Vec<Term> = Vec::new();
    for t in a.terms() {
        let relevant = match &t {
            Term::Var(x) => free.contains(x),
            other => other.is_closed(),
        };
        if relevant && !seen.contains(&t) {
            seen.push(t);
        }
    }
    seen.into_iter()
        .map(|t| {
            let counts = occurrence_counts(a, &t);
            OccurrenceEntry { term: t, counts }
        })
        .filter(|e| e.counts.mode() != OccurrenceMode::Absent)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_inferred as p;

    #[test]
    fn gn_examples() {
        assert!(is_gn(&Formula::Bot));
        assert!(is_gn(&p("~exists x. P(x)").unwrap()));
        assert!(!is_gn(&p("P(t)").unwrap()));
        assert!(!is_gn(&Formula::Top));
        assert!(is_gn(&p("wneg ~P(c)").unwrap()));
        assert!(!is_gn(&p("wneg P(c)").unwrap()));
        assert!(is_gn(&p("forall x. (~P(x) -> bot)").unwrap()));
    }

    #[test]
    fn wneg_gn_iff_body_gn() {
        for s in ["P(c)", "~P(c)", "bot", "top", "P(c) & ~Q(c)", "~P(c) | bot"] {
            let a = p(s).unwrap();
            assert_eq!(is_gn(&Formula::wneg(a.clone())), is_gn(&a), "{s}");
        }
    }

    #[test]
    fn st_examples() {
        assert_eq!(classify_st(&Formula::Top, StMode::Recursive), StClass::St);
        assert_eq!(classify_st(&p("P -> Q").unwrap(), StMode::Recursive), StClass::St);
        // a global existential over a GN body is itself GN, hence stable
        let ex = p("exists x. ~P(x)").unwrap();
        assert_eq!(classify_st(&ex, StMode::Recursive), StClass::St);
        assert!(is_st_p(&ex, StMode::Strict));
        assert_eq!(classify_st(&p("P(c)").unwrap(), StMode::Recursive), StClass::None);
        assert_eq!(classify_st(&p("P(c) | ~P(c)").unwrap(), StMode::Recursive), StClass::None);
        assert_eq!(classify_st(&p("(P(c) -> P(c)) | ~P(c)").unwrap(), StMode::Recursive), StClass::St);
        assert_eq!(classify_st(&p("exists x. P(x)").unwrap(), StMode::Recursive), StClass::None);
        assert_eq!(classify_st(&p("(P -> Q) | (Q -> P)").unwrap(), StMode::Recursive), StClass::StP);
    }

    #[test]
    fn strict_mode_is_narrower() {
        let nested = p("exists x. ((P(c) -> P(c)) | (Q(c) -> Q(c)) | ~P(x))").unwrap();
        assert_eq!(classify_st(&nested, StMode::Recursive), StClass::StP);
        assert_eq!(classify_st(&nested, StMode::Strict), StClass::None);
        let deep = p("exists x. ((P(c) -> P(c)) | exists y. ~(R(x, y) & P(y)))").unwrap();
        assert_eq!(classify_st(&deep, StMode::Recursive), StClass::StP);
        assert_eq!(classify_st(&deep, StMode::Strict), StClass::StP);
        let deeper = p("exists x. exists y. ((P(c) -> P(c)) | ~R(x, y))").unwrap();
        assert_eq!(classify_st(&deeper, StMode::Recursive), StClass::StP);
        assert_eq!(classify_st(&deeper, StMode::Strict), StClass::None);
        let conj = p("exists x. (((P(c) -> P(c)) | (Q(c) -> Q(c))) & ~P(x))").unwrap();
        assert_eq!(classify_st(&conj, StMode::Recursive), StClass::None);
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(occurrence_mode(&p("~P(x)").unwrap(), "x"), OccurrenceMode::GlobalOnly);
        assert_eq!(occurrence_mode(&p("P(x) | ~P(x)").unwrap(), "x"), OccurrenceMode::Local);
        assert_eq!(occurrence_mode(&p("P(c)").unwrap(), "x"), OccurrenceMode::Absent);
        assert_eq!(quantifier_mode(&p("P(c)").unwrap(), "x"), QuantMode::Local);
        assert_eq!(quantifier_mode(&p("~P(x)").unwrap(), "x"), QuantMode::Global);
        let counts = occurrence_counts(&p("P(x) | ~P(x)").unwrap(), &Term::var("x"));
        assert_eq!(counts, OccurrenceCounts { global: 1, non_global: 1 });
    }

    #[test]
    fn mode_ignores_outer_negation() {
        let a = p("~exists x. P(x)").unwrap();
        let Formula::Not(inner) = &a else { panic!() };
        let Formula::Exists(x, body) = &**inner else { panic!() };
        assert_eq!(quantifier_mode(body, x), QuantMode::Local);
    }

    #[test]
    fn closed_term_report() {
        let a = p("P(t) | ~P(t)").unwrap();
        let r = occurrence_report(&a);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].term, Term::constant("t"));
        assert_eq!(r[0].label(), "mixed");
        let b = p("forall x. (P(x) -> ~Q(f(c)))").unwrap();
        let r = occurrence_report(&b);
        let labels: Vec<_> = r.iter().map(|e| (alloc::format!("{}", e.term), e.label())).collect();
        assert_eq!(labels, [("f(c)".into(), "global"), ("c".into(), "global")]);
    }
}
