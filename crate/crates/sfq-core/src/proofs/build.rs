use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::derivation::{Derivation, Step};
use super::rules::{Rule, System};
use crate::syntax::{is_gn, quantifier_mode, Formula, QuantMode, Term};

/// Index of a step inside a [`ProofBuilder`].
pub type Node = usize;

/// Assembles derivations step by step, choosing rule variants for the
/// target system.
///
/// The helpers panic when their inputs do not have the required shape.
#[derive(Clone, Debug)]
pub struct ProofBuilder {
    system: System,
    steps: Vec<Step>,
    labels: BTreeSet<String>,
    counter: usize,
}

fn ww(a: &Formula) -> Formula {
    Formula::wneg(Formula::wneg(a.clone()))
}

impl ProofBuilder {
    pub fn new(system: System) -> ProofBuilder {
        ProofBuilder { system, steps: Vec::new(), labels: BTreeSet::new(), counter: 0 }
    }

    pub fn system(&self) -> System {
        self.system
    }

    pub fn formula(&self, n: Node) -> &Formula {
        &self.steps[n].conclusion
    }

    pub fn fresh_label(&mut self) -> String {
        loop {
            self.counter += 1;
            let l = format!("h{}", self.counter);
            if self.labels.insert(l.clone()) {
                return l;
            }
        }
    }

    /// Keeps `labels` out of the fresh ones.
    pub fn reserve_labels<'a>(&mut self, labels: impl IntoIterator<Item = &'a String>) {
        self.labels.extend(labels.into_iter().cloned());
    }

    /// Appends a step as is.
    pub fn push(&mut self, step: Step) -> Node {
        if let Some(l) = &step.label {
            self.labels.insert(l.clone());
        }
        self.steps.push(step);
        self.steps.len() - 1
    }

    pub fn rule(&mut self, rule: Rule, conclusion: Formula, premises: &[Node]) -> Node {
        let id = format!("s{}", self.steps.len());
        self.push(Step::new(id, rule, conclusion, premises.to_vec()))
    }

    pub fn discharge(&mut self, n: Node, position: usize, label: &str) {
        self.steps[n].discharges.push((position, label.into()));
    }

    /// A hypothesis with a fresh label.
    pub fn hyp(&mut self, a: Formula) -> (Node, String) {
        let l = self.fresh_label();
        let n = self.hyp_labelled(a, &l);
        (n, l)
    }

    pub fn hyp_labelled(&mut self, a: Formula, label: &str) -> Node {
        let n = self.rule(Rule::Hyp, a, &[]);
        self.steps[n].label = Some(label.into());
        self.labels.insert(label.into());
        n
    }

    /// Copies `d` in, renaming its labels apart; returns the copied root
    /// and the renaming.
    pub fn import(&mut self, d: &Derivation) -> (Node, Vec<(String, String)>) {
        let mut renaming: Vec<(String, String)> = Vec::new();
        let offset = self.steps.len();
        for s in d.steps() {
            let mut s = s.clone();
            let mut rename = |l: &str, b: &mut ProofBuilder| -> String {
                if let Some((_, new)) = renaming.iter().find(|(old, _)| old == l) {
                    return new.clone();
                }
                let new = b.fresh_label();
                renaming.push((l.into(), new.clone()));
                new
            };
            if let Some(l) = &s.label {
                s.label = Some(rename(l, self));
            }
            for (_, l) in &mut s.discharges {
                *l = rename(l, self);
            }
            s.premises.iter_mut().for_each(|p| *p += offset);
            s.id = format!("s{}", self.steps.len());
            self.push(s);
        }
        (offset + d.root(), renaming)
    }

    /// The derivation of `root`, restricted to the steps it uses.
    pub fn finish(&self, root: Node) -> Derivation {
        let mut used = vec![false; root + 1];
        used[root] = true;
        for i in (0..=root).rev() {
            if used[i] {
                for &p in &self.steps[i].premises {
                    used[p] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; root + 1];
        let mut out = Vec::new();
        for i in 0..=root {
            if used[i] {
                map[i] = out.len();
                let mut s = self.steps[i].clone();
                s.premises.iter_mut().for_each(|p| *p = map[*p]);
                s.id = format!("s{}", out.len());
                out.push(s);
            }
        }
        Derivation::new(out).expect("builder output is well formed")
    }

    pub fn top_i(&mut self) -> Node {
        self.rule(Rule::TopI, Formula::Top, &[])
    }

    pub fn bot_e(&mut self, n: Node, target: Formula) -> Node {
        self.rule(Rule::BotE, target, &[n])
    }

    pub fn and_i(&mut self, a: Node, b: Node) -> Node {
        let c = Formula::and(self.formula(a).clone(), self.formula(b).clone());
        self.rule(Rule::AndI, c, &[a, b])
    }

    pub fn and_e1(&mut self, n: Node) -> Node {
        let Formula::And(a, _) = self.formula(n).clone() else { panic!("and_e1 on a non-conjunction") };
        self.rule(Rule::AndE1, *a, &[n])
    }

    pub fn and_e2(&mut self, n: Node) -> Node {
        let Formula::And(_, b) = self.formula(n).clone() else { panic!("and_e2 on a non-conjunction") };
        self.rule(Rule::AndE2, *b, &[n])
    }

    pub fn or_i1(&mut self, n: Node, right: Formula) -> Node {
        let c = Formula::or(self.formula(n).clone(), right);
        self.rule(Rule::OrI1, c, &[n])
    }

    pub fn or_i2(&mut self, left: Formula, n: Node) -> Node {
        let c = Formula::or(left, self.formula(n).clone());
        self.rule(Rule::OrI2, c, &[n])
    }

    /// `or_e` discharging `l1` in the second and `l2` in the third premise.
    pub fn or_e(&mut self, major: Node, n1: Node, l1: &str, n2: Node, l2: &str) -> Node {
        let c = self.formula(n1).clone();
        let n = self.rule(Rule::OrE, c, &[major, n1, n2]);
        self.discharge(n, 1, l1);
        self.discharge(n, 2, l2);
        n
    }

    /// `a -> b` from a derivation of `b` or `wneg wneg b` from `[a]`.
    pub fn imp_i(&mut self, label: &str, a: Formula, b: Formula, body: Node) -> Node {
        let body = if *self.formula(body) == ww(&b) { body } else { self.ww_i(body) };
        let n = self.rule(Rule::ImpI, Formula::implies(a, b), &[body]);
        self.discharge(n, 0, label);
        n
    }

    pub fn imp_e(&mut self, imp: Node, arg: Node) -> Node {
        let Formula::Implies(_, b) = self.formula(imp).clone() else { panic!("imp_e on a non-implication") };
        self.rule(Rule::ImpE, ww(&b), &[imp, arg])
    }

    /// `bot` from `~A` or `wneg A` together with `A`.
    pub fn absurd(&mut self, neg: Node, a: Node) -> Node {
        match self.formula(neg) {
            Formula::Not(_) => self.rule(Rule::NegE, Formula::Bot, &[neg, a]),
            _ => match self.system {
                System::Nsf => self.rule(Rule::WnegE, Formula::Bot, &[neg, a]),
                System::NsfP => {
                    let n = self.neg_i(neg);
                    self.rule(Rule::NegE, Formula::Bot, &[n, a])
                }
            },
        }
    }

    /// `wneg a` from a derivation of `bot` from `[a]`.
    pub fn wneg_i(&mut self, label: &str, a: Formula, bot: Node) -> Node {
        let w = self.bot_e(bot, ww(&Formula::Bot));
        let n = self.rule(Rule::ImpI, Formula::wneg(a), &[w]);
        self.discharge(n, 0, label);
        n
    }

    /// `wneg wneg A` from `A`.
    pub fn ww_i(&mut self, n: Node) -> Node {
        let a = self.formula(n).clone();
        let (h, l) = self.hyp(Formula::wneg(a.clone()));
        let bot = self.absurd(h, n);
        self.wneg_i(&l, Formula::wneg(a), bot)
    }

    /// `~A` from `wneg A`, by the first available negation rule.
    pub fn neg_i(&mut self, n: Node) -> Node {
        let a = self.formula(n).as_wneg().expect("neg_i needs `A -> bot`").clone();
        let rule = match self.system {
            System::NsfP => Rule::NegIP,
            System::Nsf if is_gn(&a) => Rule::NegI1,
            System::Nsf => Rule::NegI2,
        };
        self.rule(rule, Formula::not(a), &[n])
    }

    /// `~a` from a derivation of `bot` from `[a]`.
    pub fn neg_intro(&mut self, label: &str, a: Formula, bot: Node) -> Node {
        let w = self.wneg_i(label, a, bot);
        self.neg_i(w)
    }

    /// `S` from `wneg wneg S`.
    pub fn st(&mut self, n: Node) -> Node {
        let s = self.formula(n).as_double_wneg().expect("st needs `wneg wneg S`").clone();
        let rule = if self.system == System::Nsf { Rule::St } else { Rule::StP };
        self.rule(rule, s, &[n])
    }

    /// `wneg wneg b` from `wneg wneg a` and a derivation `res` of `b` or
    /// `wneg wneg b` from `[a]` labelled `label`.
    pub fn ww_bind(&mut self, ww_a: Node, label: &str, res: Node, b: Formula) -> Node {
        let a = self.formula(ww_a).as_double_wneg().expect("ww_bind needs `wneg wneg A`").clone();
        let (hu, lu) = self.hyp(Formula::wneg(b.clone()));
        let bot1 = if *self.formula(res) == b { self.absurd(hu, res) } else { self.absurd(res, hu) };
        let wa = self.wneg_i(label, a, bot1);
        let bot2 = self.absurd(ww_a, wa);
        self.wneg_i(&lu, Formula::wneg(b), bot2)
    }

    /// `~~A` from `wneg wneg A`.
    pub fn nn_from_ww(&mut self, n: Node) -> Node {
        let a = self.formula(n).as_double_wneg().expect("nn_from_ww needs `wneg wneg A`").clone();
        let (hn, ln) = self.hyp(Formula::not(a.clone()));
        let (ha, la) = self.hyp(a.clone());
        let bot = self.absurd(hn, ha);
        let wa = self.wneg_i(&la, a, bot);
        let bot2 = self.absurd(n, wa);
        let na = self.formula(hn).clone();
        self.neg_intro(&ln, na, bot2)
    }

    /// `wneg wneg B` from `wneg wneg A` and `wneg wneg (A -> B)`.
    pub fn mp_ww(&mut self, ww_a: Node, ww_imp: Node) -> Node {
        let imp = self.formula(ww_imp).as_double_wneg().expect("mp_ww needs `wneg wneg (A -> B)`").clone();
        let Formula::Implies(a, b) = imp.clone() else { panic!("mp_ww needs an implication") };
        let (ha, la) = self.hyp(*a);
        let (hi, li) = self.hyp(imp);
        let r = self.imp_e(hi, ha);
        let inner = self.ww_bind(ww_a, &la, r, (*b).clone());
        self.ww_bind(ww_imp, &li, inner, *b)
    }

    /// `forall x. body` from `wneg wneg body[y/x]`, discharging `E(y)` under
    /// `e_label` when the local variant is used.
    pub fn forall_i(&mut self, x: &str, body: Formula, prem: Node, eigen: &str, e_label: Option<&str>) -> Node {
        let rule = match (self.system, quantifier_mode(&body, x)) {
            (System::NsfP, _) => Rule::ForallIP,
            (System::Nsf, QuantMode::Global) => Rule::ForallGloI,
            (System::Nsf, QuantMode::Local) => Rule::ForallLocI,
        };
        let n = self.rule(rule, Formula::forall(x, body), &[prem]);
        self.steps[n].var = Some(eigen.into());
        if let (Rule::ForallLocI, Some(l)) = (rule, e_label) {
            self.discharge(n, 0, l);
        }
        n
    }

    /// `wneg wneg body[t/x]` from `forall x. body`; `e` proves `E(t)` for
    /// the local variant of the NSF rule.
    pub fn forall_e(&mut self, n: Node, t: Term, e: Option<Node>) -> Node {
        let Formula::Forall(x, body) = self.formula(n).clone() else { panic!("forall_e on a non-universal") };
        let inst = body.substitute(&x, &t).expect("term free for the variable");
        let (rule, prems) = match (self.system, quantifier_mode(&body, &x)) {
            (System::NsfP, _) => (Rule::ForallEP, vec![n]),
            (System::Nsf, QuantMode::Global) => (Rule::ForallGloE, vec![n]),
            (System::Nsf, QuantMode::Local) => (Rule::ForallLocE, vec![n, e.expect("forall_loc_e needs E(t)")]),
        };
        let m = self.rule(rule, ww(&inst), &prems);
        self.steps[m].term = Some(t);
        m
    }

    /// `exists x. body` from `body[t/x]`; `e` proves `E(t)` for the local
    /// variant.
    pub fn exists_i(&mut self, inst: Node, x: &str, body: Formula, t: Term, e: Option<Node>) -> Node {
        let (rule, prems) = match quantifier_mode(&body, x) {
            QuantMode::Global => (Rule::ExistsGloI, vec![inst]),
            QuantMode::Local => (Rule::ExistsLocI, vec![inst, e.expect("exists_loc_i needs E(t)")]),
        };
        let m = self.rule(rule, Formula::exists(x, body), &prems);
        self.steps[m].term = Some(t);
        m
    }

    /// Existential elimination with eigenvariable `eigen`; the minor premise
    /// discharges `inst_label` and, in the local variant, `e_label`.
    pub fn exists_e(&mut self, major: Node, eigen: &str, minor: Node, inst_label: &str, e_label: Option<&str>) -> Node {
        let Formula::Exists(y, body) = self.formula(major).clone() else { panic!("exists_e on a non-existential") };
        let rule = match quantifier_mode(&body, &y) {
            QuantMode::Global => Rule::ExistsGloE,
            QuantMode::Local => Rule::ExistsLocE,
        };
        let c = self.formula(minor).clone();
        let n = self.rule(rule, c, &[major, minor]);
        self.steps[n].var = Some(eigen.into());
        self.discharge(n, 1, inst_label);
        if let (Rule::ExistsLocE, Some(l)) = (rule, e_label) {
            self.discharge(n, 1, l);
        }
        n
    }

    pub fn dne(&mut self, a: Formula) -> Node {
        let c = Formula::implies(Formula::not(Formula::not(a.clone())), a);
        self.rule(Rule::Dne, c, &[])
    }

    pub fn obj(&mut self) -> Node {
        let e = Formula::exists_pred(Term::var("x"));
        self.rule(Rule::Obj, Formula::forall("x", Formula::not(Formula::not(e))), &[])
    }

    /// `wneg wneg E(t)` from the prevalence axioms.
    pub fn ww_existence(&mut self, t: Term) -> Node {
        let obj = self.obj();
        let inst = self.forall_e(obj, t.clone(), None);
        let nn = self.st(inst);
        let dne = self.dne(Formula::exists_pred(t));
        self.imp_e(dne, nn)
    }
}
