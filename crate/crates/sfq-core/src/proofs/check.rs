use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::derivation::{Derivation, Step};
use super::rules::{Rule, System};
use crate::syntax::{is_gn, is_st, is_st_p, quantifier_mode, Formula, QuantMode, StMode, Term, EXISTENCE};

/// Checker switches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Let `E(x)` for the eigenvariable `x` stay open in the minor
    /// derivation of `exists_glo_e`.
    pub lenient_exists_glo_e: bool,
    /// How `st_p` reads the primed constituents.
    pub st_mode: StMode,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { lenient_exists_glo_e: false, st_mode: StMode::Recursive }
    }
}

/// A violated rule condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    RuleNotInSystem { rule: Rule, system: System },
    PremiseCount { expected: usize, found: usize },
    /// Conclusion or premises do not fit the rule.
    Scheme(String),
    UnexpectedDischarge { position: usize },
    DischargeMismatch { label: String, found: Formula },
    NotGn(Formula),
    NotSt(Formula),
    NotStP(Formula),
    /// Open hypothesis of the `wneg A` derivation outside GN.
    NonGnHypothesis(Formula),
    /// A `glo` rule on a local variable or the other way round.
    WrongMode { var: String, found: QuantMode },
    NotFreeFor { var: String, term: Term },
    EigenvariableInHypothesis { var: String, hypothesis: Formula },
    /// `E(x)` left open in the minor derivation of `exists_glo_e`.
    ExistenceHypothesisInGloE { var: String },
    EigenvariableInConclusion { var: String },
    EigenvariableInMajor { var: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RuleNotInSystem { rule, system } => write!(f, "rule {rule} is not a rule of {system}"),
            Violation::PremiseCount { expected, found } => write!(f, "expected {expected} premises, found {found}"),
            Violation::Scheme(m) => f.write_str(m),
            Violation::UnexpectedDischarge { position } => write!(f, "nothing can be discharged at premise {position}"),
            Violation::DischargeMismatch { label, found } => write!(f, "label `{label}` marks `{found}`, which this rule cannot discharge"),
            Violation::NotGn(a) => write!(f, "`{a}` is not global negative"),
            Violation::NotSt(a) => write!(f, "`{a}` is not in the stable fragment"),
            Violation::NotStP(a) => write!(f, "`{a}` is not in the prevalent stable fragment"),
            Violation::NonGnHypothesis(a) => write!(f, "the premise depends on `{a}`, which is not global negative"),
            Violation::WrongMode { var, found } => {
                let m = if *found == QuantMode::Global { "only globally" } else { "locally" };
                write!(f, "`{var}` occurs {m}, so this variant of the rule does not apply")
            }
            Violation::NotFreeFor { var, term } => write!(f, "`{term}` is not free for `{var}`"),
            Violation::EigenvariableInHypothesis { var, hypothesis } => write!(f, "eigenvariable `{var}` is free in open hypothesis `{hypothesis}`"),
            Violation::ExistenceHypothesisInGloE { var } => write!(f, "`E({var})` stays open in the minor premise of exists_glo_e"),
            Violation::EigenvariableInConclusion { var } => write!(f, "eigenvariable `{var}` is free in the conclusion"),
            Violation::EigenvariableInMajor { var } => write!(f, "eigenvariable `{var}` is free in the quantified formula"),
        }
    }
}

/// A violation at a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub step: usize,
    pub id: String,
    pub violation: Violation,
}

/// Outcome of [`check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub system: System,
    pub ok: bool,
    pub conclusion: Formula,
    /// Open hypotheses of the whole derivation, one entry per occurrence.
    pub open_hypotheses: Vec<Formula>,
    pub failures: Vec<Failure>,
}

pub fn check(d: &Derivation, system: System) -> CheckReport {
    check_with(d, system, &CheckOptions::default())
}

pub fn check_with(d: &Derivation, system: System, opts: &CheckOptions) -> CheckReport {
    let steps = d.steps();
    let mut open: Vec<Vec<(String, Formula)>> = Vec::with_capacity(steps.len());
    let mut failures = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        let mut out = Vec::new();
        let hyps = check_step(steps, s, system, opts, &open, &mut out);
        open.push(hyps);
        failures.extend(out.into_iter().map(|v| Failure { step: i, id: s.id.clone(), violation: v }));
    }
    let root = d.root();
    CheckReport {
        system,
        ok: failures.is_empty(),
        conclusion: d.conclusion().clone(),
        open_hypotheses: open[root].iter().map(|(_, a)| a.clone()).collect(),
        failures,
    }
}

/// Conditions evaluated after discharging.
enum Eigen {
    ForallI { var: String },
    ExistsE { var: String, glo: bool },
}

struct Plan {
    allowed: Vec<(usize, Vec<Formula>)>,
    eigen: Option<Eigen>,
    gn_hyps: bool,
}

impl Plan {
    fn none() -> Plan {
        Plan { allowed: Vec::new(), eigen: None, gn_hyps: false }
    }
}

fn scheme(out: &mut Vec<Violation>, msg: String) {
    out.push(Violation::Scheme(msg));
}

fn expect_eq(out: &mut Vec<Violation>, what: &str, found: &Formula, expected: &Formula) -> bool {
    if found == expected {
        true
    } else {
        scheme(out, format!("{what} should be `{expected}`, found `{found}`"));
        false
    }
}

fn ww(a: &Formula) -> Formula {
    Formula::wneg(Formula::wneg(a.clone()))
}

fn existence(t: &Term) -> Formula {
    Formula::exists_pred(t.clone())
}

fn as_existence(a: &Formula) -> Option<&Term> {
    match a {
        Formula::Atom(p, args) if p == EXISTENCE && args.len() == 1 => Some(&args[0]),
        _ => None,
    }
}

fn check_mode(out: &mut Vec<Violation>, body: &Formula, x: &str, want: Option<QuantMode>) {
    if let Some(want) = want {
        let found = quantifier_mode(body, x);
        if found != want {
            out.push(Violation::WrongMode { var: x.into(), found });
        }
    }
}

fn check_step(
    steps: &[Step],
    s: &Step,
    system: System,
    opts: &CheckOptions,
    open: &[Vec<(String, Formula)>],
    out: &mut Vec<Violation>,
) -> Vec<(String, Formula)> {
    if s.rule == Rule::Hyp {
        let label = s.label.clone().unwrap_or_default();
        return vec![(label, s.conclusion.clone())];
    }
    if !s.rule.in_system(system) {
        out.push(Violation::RuleNotInSystem { rule: s.rule, system });
    }
    let merged = |skip: &[(usize, String)]| -> Vec<Vec<(String, Formula)>> {
        s.premises
            .iter()
            .enumerate()
            .map(|(pos, &p)| {
                open[p].iter().filter(|(l, _)| !skip.iter().any(|(q, m)| *q == pos && m == l)).cloned().collect()
            })
            .collect()
    };
    if s.premises.len() != s.rule.arity() {
        out.push(Violation::PremiseCount { expected: s.rule.arity(), found: s.premises.len() });
        return merged(&[]).concat();
    }
    let prem: Vec<&Formula> = s.premises.iter().map(|&p| &steps[p].conclusion).collect();
    let plan = rule_plan(s, &prem, opts, out);
    for (pos, label) in &s.discharges {
        match plan.allowed.iter().find(|(q, _)| q == pos) {
            None => out.push(Violation::UnexpectedDischarge { position: *pos }),
            Some((_, forms)) => {
                for (l, a) in &open[s.premises[*pos]] {
                    if l == label && !forms.contains(a) {
                        out.push(Violation::DischargeMismatch { label: label.clone(), found: a.clone() });
                    }
                }
            }
        }
    }
    let effective: Vec<(usize, String)> = s.discharges.iter().filter(|(q, _)| plan.allowed.iter().any(|(p, _)| p == q)).cloned().collect();
    let remaining = merged(&effective);
    if plan.gn_hyps {
        for (_, a) in &remaining[0] {
            if !is_gn(a) && !out.contains(&Violation::NonGnHypothesis(a.clone())) {
                out.push(Violation::NonGnHypothesis(a.clone()));
            }
        }
    }
    match &plan.eigen {
        Some(Eigen::ForallI { var }) => {
            for (_, a) in &remaining[0] {
                let v = Violation::EigenvariableInHypothesis { var: var.clone(), hypothesis: a.clone() };
                if a.occurs_free(var) && !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        Some(Eigen::ExistsE { var, glo }) => {
            for (_, a) in &remaining[1] {
                if !a.occurs_free(var) {
                    continue;
                }
                let is_e = as_existence(a) == Some(&Term::Var(var.clone()));
                let v = if *glo && is_e {
                    if opts.lenient_exists_glo_e {
                        continue;
                    }
                    Violation::ExistenceHypothesisInGloE { var: var.clone() }
                } else {
                    Violation::EigenvariableInHypothesis { var: var.clone(), hypothesis: a.clone() }
                };
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        None => {}
    }
    remaining.concat()
}

/// `target` is not an instance of the pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoMatch;

/// Finds `t` with `pattern[t/x] = target`; `Ok(None)` when `x` is not free
/// in `pattern` and the two agree.
pub fn match_instance(pattern: &Formula, x: &str, target: &Formula) -> Result<Option<Term>, NoMatch> {
    let mut found = None;
    match_formula(pattern, x, target, &mut found)?;
    Ok(found)
}

fn match_formula(p: &Formula, x: &str, t: &Formula, found: &mut Option<Term>) -> Result<(), NoMatch> {
    match (p, t) {
        (Formula::Top, Formula::Top) | (Formula::Bot, Formula::Bot) => Ok(()),
        (Formula::Atom(a, xs), Formula::Atom(b, ys)) if a == b && xs.len() == ys.len() => {
            xs.iter().zip(ys).try_for_each(|(u, v)| match_term(u, x, v, found))
        }
        (Formula::And(a, b), Formula::And(c, d)) | (Formula::Or(a, b), Formula::Or(c, d)) | (Formula::Implies(a, b), Formula::Implies(c, d)) => {
            match_formula(a, x, c, found)?;
            match_formula(b, x, d, found)
        }
        (Formula::Not(a), Formula::Not(b)) => match_formula(a, x, b, found),
        (Formula::Forall(y, a), Formula::Forall(z, b)) | (Formula::Exists(y, a), Formula::Exists(z, b)) if y == z => {
            if y == x {
                if a == b {
                    Ok(())
                } else {
                    Err(NoMatch)
                }
            } else {
                match_formula(a, x, b, found)
            }
        }
        _ => Err(NoMatch),
    }
}

fn match_term(p: &Term, x: &str, t: &Term, found: &mut Option<Term>) -> Result<(), NoMatch> {
    match (p, t) {
        (Term::Var(v), _) if v == x => match found {
            Some(prev) if prev != t => Err(NoMatch),
            Some(_) => Ok(()),
            None => {
                *found = Some(t.clone());
                Ok(())
            }
        },
        (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
            xs.iter().zip(ys).try_for_each(|(u, v)| match_term(u, x, v, found))
        }
        _ if p == t => Ok(()),
        _ => Err(NoMatch),
    }
}

/// The instantiating term: the recorded one, else the one read off
/// `target`, else the argument of an `E(t)` premise.
fn instance_term(
    out: &mut Vec<Violation>,
    s: &Step,
    body: &Formula,
    x: &str,
    target: &Formula,
    e_premise: Option<&Formula>,
) -> Option<Option<Term>> {
    let from_e = e_premise.and_then(as_existence).cloned();
    if let Some(e) = e_premise {
        if from_e.is_none() {
            scheme(out, format!("second premise should be an existence atom, found `{e}`"));
            return None;
        }
    }
    let t = match (&s.term, from_e) {
        (Some(t), Some(e)) if *t != e => {
            scheme(out, format!("recorded term `{t}` differs from the existence premise `E({e})`"));
            return None;
        }
        (Some(t), _) => Some(t.clone()),
        (None, Some(e)) => Some(e),
        (None, None) => match match_instance(body, x, target) {
            Ok(t) => t,
            Err(NoMatch) => {
                scheme(out, format!("`{target}` is not an instance of `{body}` for `{x}`"));
                return None;
            }
        },
    };
    Some(t)
}

/// `body[t/x]`, or `body` for a vacuous instantiation.
fn instantiate(out: &mut Vec<Violation>, body: &Formula, x: &str, t: &Option<Term>) -> Option<Formula> {
    match t {
        None => Some(body.clone()),
        Some(t) => match body.substitute(x, t) {
            Ok(a) => Some(a),
            Err(_) => {
                out.push(Violation::NotFreeFor { var: x.into(), term: t.clone() });
                None
            }
        },
    }
}

fn rule_plan(s: &Step, prem: &[&Formula], opts: &CheckOptions, out: &mut Vec<Violation>) -> Plan {
    let c = &s.conclusion;
    let mut plan = Plan::none();
    match s.rule {
        Rule::Hyp => {}
        Rule::TopI => {
            expect_eq(out, "conclusion", c, &Formula::Top);
        }
        Rule::BotE => {
            expect_eq(out, "premise", prem[0], &Formula::Bot);
        }
        Rule::AndI => {
            expect_eq(out, "conclusion", c, &Formula::and(prem[0].clone(), prem[1].clone()));
        }
        Rule::AndE1 | Rule::AndE2 => match prem[0] {
            Formula::And(a, b) => {
                let want = if s.rule == Rule::AndE1 { a } else { b };
                expect_eq(out, "conclusion", c, want);
            }
            other => scheme(out, format!("premise should be a conjunction, found `{other}`")),
        },
        Rule::OrI1 | Rule::OrI2 => match c {
            Formula::Or(a, b) => {
                let want = if s.rule == Rule::OrI1 { a } else { b };
                expect_eq(out, "premise", prem[0], want);
            }
            other => scheme(out, format!("conclusion should be a disjunction, found `{other}`")),
        },
        Rule::OrE => match prem[0] {
            Formula::Or(a, b) => {
                expect_eq(out, "second premise", prem[1], c);
                expect_eq(out, "third premise", prem[2], c);
                plan.allowed = vec![(1, vec![(**a).clone()]), (2, vec![(**b).clone()])];
            }
            other => scheme(out, format!("first premise should be a disjunction, found `{other}`")),
        },
        Rule::Str1 => match (prem[0], as_existence(c)) {
            (Formula::Atom(_, args), Some(t)) if args.contains(t) => {}
            _ => scheme(out, format!("`{c}` is not `E(t)` for an argument `t` of the atom `{}`", prem[0])),
        },
        Rule::Str2 => match (as_existence(prem[0]), as_existence(c)) {
            (Some(Term::App(_, args)), Some(t)) if args.contains(t) => {}
            _ => scheme(out, format!("`{c}` is not `E(t)` for an argument `t` of the application in `{}`", prem[0])),
        },
        Rule::St | Rule::StP => {
            if expect_eq(out, "premise", prem[0], &ww(c)) {
                if s.rule == Rule::St && !is_st(c) {
                    out.push(Violation::NotSt(c.clone()));
                }
                if s.rule == Rule::StP && !is_st_p(c, opts.st_mode) {
                    out.push(Violation::NotStP(c.clone()));
                }
            }
        }
        Rule::ImpI => match c {
            Formula::Implies(a, b) => {
                expect_eq(out, "premise", prem[0], &ww(b));
                plan.allowed = vec![(0, vec![(**a).clone()])];
            }
            other => scheme(out, format!("conclusion should be an implication, found `{other}`")),
        },
        Rule::ImpE => match prem[0] {
            Formula::Implies(a, b) => {
                expect_eq(out, "second premise", prem[1], a);
                expect_eq(out, "conclusion", c, &ww(b));
            }
            other => scheme(out, format!("first premise should be an implication, found `{other}`")),
        },
        Rule::NegI1 | Rule::NegI2 | Rule::NegIP => match prem[0].as_wneg() {
            Some(a) => {
                if expect_eq(out, "conclusion", c, &Formula::not(a.clone())) && s.rule == Rule::NegI1 && !is_gn(a) {
                    out.push(Violation::NotGn(a.clone()));
                }
                plan.gn_hyps = s.rule == Rule::NegI2;
            }
            None => scheme(out, format!("premise should have the form `A -> bot`, found `{}`", prem[0])),
        },
        Rule::WnegE => {
            expect_eq(out, "first premise", prem[0], &Formula::wneg(prem[1].clone()));
            expect_eq(out, "conclusion", c, &Formula::Bot);
        }
        Rule::NegE => {
            expect_eq(out, "first premise", prem[0], &Formula::not(prem[1].clone()));
            expect_eq(out, "conclusion", c, &Formula::Bot);
        }
        Rule::ForallGloI | Rule::ForallLocI | Rule::ForallIP => match c {
            Formula::Forall(x, a) => {
                let want = match s.rule {
                    Rule::ForallGloI => Some(QuantMode::Global),
                    Rule::ForallLocI => Some(QuantMode::Local),
                    _ => None,
                };
                check_mode(out, a, x, want);
                let y = s.var.clone().unwrap_or_else(|| x.clone());
                if y != *x && c.occurs_free(&y) {
                    out.push(Violation::EigenvariableInConclusion { var: y.clone() });
                }
                if let Some(inst) = instantiate(out, a, x, &Some(Term::Var(y.clone()))) {
                    expect_eq(out, "premise", prem[0], &ww(&inst));
                }
                if s.rule == Rule::ForallLocI {
                    plan.allowed = vec![(0, vec![existence(&Term::Var(y.clone()))])];
                }
                plan.eigen = Some(Eigen::ForallI { var: y });
            }
            other => scheme(out, format!("conclusion should be universal, found `{other}`")),
        },
        Rule::ForallGloE | Rule::ForallLocE | Rule::ForallEP => match prem[0] {
            Formula::Forall(x, a) => {
                let want = match s.rule {
                    Rule::ForallGloE => Some(QuantMode::Global),
                    Rule::ForallLocE => Some(QuantMode::Local),
                    _ => None,
                };
                check_mode(out, a, x, want);
                let target = c.as_wneg().and_then(Formula::as_wneg);
                let Some(target) = target else {
                    scheme(out, format!("conclusion should have the form `wneg wneg A`, found `{c}`"));
                    return plan;
                };
                let e = if s.rule == Rule::ForallLocE { Some(prem[1]) } else { None };
                if let Some(t) = instance_term(out, s, a, x, target, e) {
                    if let Some(inst) = instantiate(out, a, x, &t) {
                        expect_eq(out, "conclusion", c, &ww(&inst));
                    }
                }
            }
            other => scheme(out, format!("premise should be universal, found `{other}`")),
        },
        Rule::ExistsGloI | Rule::ExistsLocI => match c {
            Formula::Exists(x, a) => {
                let glo = s.rule == Rule::ExistsGloI;
                check_mode(out, a, x, Some(if glo { QuantMode::Global } else { QuantMode::Local }));
                let e = if glo { None } else { Some(prem[1]) };
                if let Some(t) = instance_term(out, s, a, x, prem[0], e) {
                    if let Some(inst) = instantiate(out, a, x, &t) {
                        expect_eq(out, "premise", prem[0], &inst);
                    }
                }
            }
            other => scheme(out, format!("conclusion should be existential, found `{other}`")),
        },
        Rule::ExistsGloE | Rule::ExistsLocE => match prem[0] {
            Formula::Exists(y, a) => {
                let glo = s.rule == Rule::ExistsGloE;
                check_mode(out, a, y, Some(if glo { QuantMode::Global } else { QuantMode::Local }));
                expect_eq(out, "second premise", prem[1], c);
                let x = s.var.clone().unwrap_or_else(|| y.clone());
                if c.occurs_free(&x) {
                    out.push(Violation::EigenvariableInConclusion { var: x.clone() });
                }
                if x != *y && prem[0].occurs_free(&x) {
                    out.push(Violation::EigenvariableInMajor { var: x.clone() });
                }
                let mut forms = Vec::new();
                if let Some(inst) = instantiate(out, a, y, &Some(Term::Var(x.clone()))) {
                    forms.push(inst);
                }
                if !glo {
                    forms.push(existence(&Term::Var(x.clone())));
                }
                plan.allowed = vec![(1, forms)];
                plan.eigen = Some(Eigen::ExistsE { var: x, glo });
            }
            other => scheme(out, format!("first premise should be existential, found `{other}`")),
        },
        Rule::Dne => match c {
            Formula::Implies(l, r) if **l == Formula::not(Formula::not((**r).clone())) => {}
            other => scheme(out, format!("`{other}` is not an instance of `~~A -> A`")),
        },
        Rule::Obj => match c {
            Formula::Forall(x, a) if **a == Formula::not(Formula::not(existence(&Term::Var(x.clone())))) => {}
            other => scheme(out, format!("`{other}` is not `forall x. ~~E(x)`")),
        },
    }
    plan
}
