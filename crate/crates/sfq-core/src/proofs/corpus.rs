//! Named fixture derivations.

use alloc::vec;
use alloc::vec::Vec;

use super::build::{Node, ProofBuilder};
use super::derivation::Derivation;
use super::derived::exists_loc_i_p;
use super::rules::System;
use crate::syntax::{Formula, Term};

/// A fixture derivation with its advertised sequent.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub system: System,
    pub hypotheses: Vec<Formula>,
    pub conclusion: Formula,
    pub derivation: Derivation,
}

fn atom(p: &str, t: Term) -> Formula {
    Formula::atom(p, vec![t])
}

fn pc() -> Formula {
    atom("P", Term::constant("c"))
}

fn qc() -> Formula {
    atom("Q", Term::constant("c"))
}

fn px() -> Formula {
    atom("P", Term::var("x"))
}

fn not(a: Formula) -> Formula {
    Formula::not(a)
}

fn wneg(a: Formula) -> Formula {
    Formula::wneg(a)
}

fn entry(name: &'static str, b: ProofBuilder, root: Node, hypotheses: Vec<Formula>) -> CorpusEntry {
    let derivation = b.finish(root);
    CorpusEntry { name, system: b.system(), hypotheses, conclusion: derivation.conclusion().clone(), derivation }
}

/// `A | B` from a derivation of `bot` from `[wneg (A | B)]`, via
/// `wneg wneg (A | B)` and the stability rule.
fn by_stability(b: &mut ProofBuilder, label: &str, goal: Formula, bot: Node) -> Node {
    let w = b.wneg_i(label, wneg(goal), bot);
    b.st(w)
}

/// `~~A` from `A`.
fn nn_intro(b: &mut ProofBuilder, a: Node) -> Node {
    let f = b.formula(a).clone();
    let (h, l) = b.hyp(not(f.clone()));
    let bot = b.absurd(h, a);
    b.neg_intro(&l, not(f), bot)
}

/// `wneg wneg A` from `~~A` by the prevalence axiom.
fn ww_from_nn(b: &mut ProofBuilder, nn: Node) -> Node {
    let a = match b.formula(nn) {
        Formula::Not(inner) => match &**inner {
            Formula::Not(a) => (**a).clone(),
            _ => panic!("expected ~~A"),
        },
        _ => panic!("expected ~~A"),
    };
    let dne = b.dne(a);
    b.imp_e(dne, nn)
}

fn basic_facts() -> Vec<CorpusEntry> {
    let a = pc();
    let n = not(pc());
    let mut out = Vec::new();

    // (i) wneg N -| |- ~N
    let mut b = ProofBuilder::new(System::Nsf);
    let (h, _) = b.hyp(wneg(n.clone()));
    let r = b.neg_i(h);
    out.push(entry("basic_i_wneg_to_neg", b, r, vec![wneg(n.clone())]));

    let mut b = ProofBuilder::new(System::Nsf);
    let (h, _) = b.hyp(not(n.clone()));
    let (m, lm) = b.hyp(n.clone());
    let bot = b.absurd(h, m);
    let r = b.wneg_i(&lm, n.clone(), bot);
    out.push(entry("basic_i_neg_to_wneg", b, r, vec![not(n.clone())]));

    // (ii) a closed proof of wneg X yields ~X and back, X = P(c) & wneg P(c)
    let x = Formula::and(a.clone(), wneg(a.clone()));
    let wneg_x = |b: &mut ProofBuilder| {
        let (h, l) = b.hyp(x.clone());
        let p = b.and_e1(h);
        let w = b.and_e2(h);
        let bot = b.absurd(w, p);
        b.wneg_i(&l, x.clone(), bot)
    };
    let mut b = ProofBuilder::new(System::Nsf);
    let w = wneg_x(&mut b);
    let r = b.neg_i(w);
    out.push(entry("basic_ii_wneg_to_neg", b, r, vec![]));

    let mut b = ProofBuilder::new(System::Nsf);
    let w = wneg_x(&mut b);
    let nx = b.neg_i(w);
    let (h, l) = b.hyp(x.clone());
    let bot = b.absurd(nx, h);
    let r = b.wneg_i(&l, x.clone(), bot);
    out.push(entry("basic_ii_neg_to_wneg", b, r, vec![]));

    // (iii) |- wneg wneg (A | wneg A)
    out.push(entry_lem_ww(System::Nsf, "basic_iii", a.clone()));

    // (iv) |- ~A | ~~A
    let mut b = ProofBuilder::new(System::Nsf);
    let goal = Formula::or(not(a.clone()), not(not(a.clone())));
    let (u, lu) = b.hyp(wneg(goal.clone()));
    let (v, lv) = b.hyp(a.clone());
    let nna = nn_intro(&mut b, v);
    let d1 = b.or_i2(not(a.clone()), nna);
    let bot1 = b.absurd(u, d1);
    let wa = b.wneg_i(&lv, a.clone(), bot1);
    let na = b.neg_i(wa);
    let d2 = b.or_i1(na, not(not(a.clone())));
    let bot2 = b.absurd(u, d2);
    let r = by_stability(&mut b, &lu, goal, bot2);
    out.push(entry("basic_iv", b, r, vec![]));

    // (v) |- N | ~N
    let mut b = ProofBuilder::new(System::Nsf);
    let goal = Formula::or(n.clone(), not(n.clone()));
    let (u, lu) = b.hyp(wneg(goal.clone()));
    let (v, lv) = b.hyp(n.clone());
    let d1 = b.or_i1(v, not(n.clone()));
    let bot1 = b.absurd(u, d1);
    let wn = b.wneg_i(&lv, n.clone(), bot1);
    let nn = b.neg_i(wn);
    let d2 = b.or_i2(n.clone(), nn);
    let bot2 = b.absurd(u, d2);
    let r = by_stability(&mut b, &lu, goal, bot2);
    out.push(entry("basic_v", b, r, vec![]));

    // (vi) ~~N |- N
    let mut b = ProofBuilder::new(System::Nsf);
    let (h, _) = b.hyp(not(not(n.clone())));
    let (u, lu) = b.hyp(wneg(n.clone()));
    let nn = b.neg_i(u);
    let bot = b.absurd(h, nn);
    let w = b.wneg_i(&lu, wneg(n.clone()), bot);
    let r = b.st(w);
    out.push(entry("basic_vi", b, r, vec![not(not(n.clone()))]));

    // (vii) exists x. ~N(x) |- ~forall x. N(x), N(x) = ~P(x)
    let nx = not(px());
    let mut b = ProofBuilder::new(System::Nsf);
    let major = Formula::exists("x", not(nx.clone()));
    let (m, _) = b.hyp(major.clone());
    let (a1, la1) = b.hyp(not(nx.clone()));
    let all = Formula::forall("x", nx.clone());
    let (f, lf) = b.hyp(all.clone());
    let inst = b.forall_e(f, Term::var("x"), None);
    let s = b.st(inst);
    let bot = b.absurd(a1, s);
    let minor = b.neg_intro(&lf, all, bot);
    let r = b.exists_e(m, "x", minor, &la1, None);
    out.push(entry("basic_vii", b, r, vec![major]));

    // (viii) ~~exists x. A(x) |- exists x. ~~A(x)
    let mut b = ProofBuilder::new(System::Nsf);
    let ex = Formula::exists("x", px());
    let goal = Formula::exists("x", not(not(px())));
    let (h, _) = b.hyp(not(not(ex.clone())));
    let (u, lu) = b.hyp(wneg(goal.clone()));
    let (e, le) = b.hyp(ex.clone());
    let (p, lp) = b.hyp(px());
    let nnp = nn_intro(&mut b, p);
    let witness = b.exists_i(nnp, "x", not(not(px())), Term::var("x"), None);
    let bot = b.absurd(u, witness);
    let bot = b.exists_e(e, "x", bot, &lp, None);
    let not_ex = b.neg_intro(&le, ex.clone(), bot);
    let bot = b.absurd(h, not_ex);
    let r = by_stability(&mut b, &lu, goal, bot);
    out.push(entry("basic_viii", b, r, vec![not(not(ex))]));

    out
}

/// `|- wneg wneg (A | wneg A)` in `system`.
fn lem_ww(b: &mut ProofBuilder, a: Formula) -> Node {
    let goal = Formula::or(a.clone(), wneg(a.clone()));
    let (u, lu) = b.hyp(wneg(goal.clone()));
    let (v, lv) = b.hyp(a.clone());
    let d1 = b.or_i1(v, wneg(a.clone()));
    let bot1 = b.absurd(u, d1);
    let wa = b.wneg_i(&lv, a.clone(), bot1);
    let d2 = b.or_i2(a, wa);
    let bot2 = b.absurd(u, d2);
    b.wneg_i(&lu, wneg(goal), bot2)
}

fn entry_lem_ww(system: System, name: &'static str, a: Formula) -> CorpusEntry {
    let mut b = ProofBuilder::new(system);
    let r = lem_ww(&mut b, a);
    entry(name, b, r, vec![])
}

/// `~(A -> B)` from nodes proving `~~A` and `~B`.
fn neg_imp(b: &mut ProofBuilder, nna: Node, nb: Node) -> Node {
    let Formula::Not(inner) = b.formula(nna).clone() else { panic!("expected ~~A") };
    let Formula::Not(a) = *inner else { panic!("expected ~~A") };
    let Formula::Not(bb) = b.formula(nb).clone() else { panic!("expected ~B") };
    let imp = Formula::implies((*a).clone(), (*bb).clone());
    let (i, li) = b.hyp(imp.clone());
    let wwa = ww_from_nn(b, nna);
    let (ha, la) = b.hyp((*a).clone());
    let wwb = b.imp_e(i, ha);
    let (hb, lb) = b.hyp((*bb).clone());
    let bot = b.absurd(nb, hb);
    let wb = b.wneg_i(&lb, (*bb).clone(), bot);
    let bot = b.absurd(wwb, wb);
    let wa = b.wneg_i(&la, (*a).clone(), bot);
    let bot = b.absurd(wwa, wa);
    b.neg_intro(&li, imp, bot)
}

fn prevalent_lemma() -> Vec<CorpusEntry> {
    let a = pc();
    let bq = qc();
    let mut out = Vec::new();

    // (i) ~~A |- ~wneg A
    let mut b = ProofBuilder::new(System::NsfP);
    let (h, _) = b.hyp(not(not(a.clone())));
    let ww = ww_from_nn(&mut b, h);
    let r = b.neg_i(ww);
    out.push(entry("prevalent_i", b, r, vec![not(not(a.clone()))]));

    // (ii) ~~A & ~~B |- ~~(A & B)
    let mut b = ProofBuilder::new(System::NsfP);
    let hyp = Formula::and(not(not(a.clone())), not(not(bq.clone())));
    let (h, _) = b.hyp(hyp.clone());
    let nna = b.and_e1(h);
    let nnb = b.and_e2(h);
    let wwa = ww_from_nn(&mut b, nna);
    let wwb = ww_from_nn(&mut b, nnb);
    let (ha, la) = b.hyp(a.clone());
    let (hb, lb) = b.hyp(bq.clone());
    let conj = b.and_i(ha, hb);
    let target = Formula::and(a.clone(), bq.clone());
    let inner = b.ww_bind(wwb, &lb, conj, target.clone());
    let outer = b.ww_bind(wwa, &la, inner, target);
    let r = b.nn_from_ww(outer);
    out.push(entry("prevalent_ii", b, r, vec![hyp]));

    // (iii) ~~A & ~B |- ~(A -> B)
    let mut b = ProofBuilder::new(System::NsfP);
    let hyp = Formula::and(not(not(a.clone())), not(bq.clone()));
    let (h, _) = b.hyp(hyp.clone());
    let nna = b.and_e1(h);
    let nb = b.and_e2(h);
    let r = neg_imp(&mut b, nna, nb);
    out.push(entry("prevalent_iii", b, r, vec![hyp]));

    // (iv) ~~(A -> B) |- ~A | ~~B
    let mut b = ProofBuilder::new(System::NsfP);
    let hyp = not(not(Formula::implies(a.clone(), bq.clone())));
    let goal = Formula::or(not(a.clone()), not(not(bq.clone())));
    let (h, _) = b.hyp(hyp.clone());
    let (u, lu) = b.hyp(wneg(goal.clone()));
    let (na, lna) = b.hyp(not(a.clone()));
    let d1 = b.or_i1(na, not(not(bq.clone())));
    let bot = b.absurd(u, d1);
    let nna = b.neg_intro(&lna, not(a.clone()), bot);
    let (hb, lb) = b.hyp(bq.clone());
    let nnb = nn_intro(&mut b, hb);
    let d2 = b.or_i2(not(a.clone()), nnb);
    let bot = b.absurd(u, d2);
    let nb = b.neg_intro(&lb, bq.clone(), bot);
    let ni = neg_imp(&mut b, nna, nb);
    let bot = b.absurd(h, ni);
    let r = by_stability(&mut b, &lu, goal, bot);
    out.push(entry("prevalent_iv", b, r, vec![hyp]));

    // (v) |- S | wneg S for S = (A -> B) | (B -> A)
    let mut b = ProofBuilder::new(System::NsfP);
    let s = Formula::or(Formula::implies(a.clone(), bq.clone()), Formula::implies(bq.clone(), a.clone()));
    let w = lem_ww(&mut b, s);
    let r = b.st(w);
    out.push(entry("prevalent_v", b, r, vec![]));

    // (vi) ~exists x. ~A(x) |- forall x. A(x)
    let mut b = ProofBuilder::new(System::NsfP);
    let hyp = not(Formula::exists("x", not(px())));
    let (h, _) = b.hyp(hyp.clone());
    let (n, ln) = b.hyp(not(px()));
    let ex = b.exists_i(n, "x", not(px()), Term::var("x"), None);
    let bot = b.absurd(h, ex);
    let nnp = b.neg_intro(&ln, not(px()), bot);
    let ww = ww_from_nn(&mut b, nnp);
    let r = b.forall_i("x", px(), ww, "x", None);
    out.push(entry("prevalent_vi", b, r, vec![hyp]));

    // (vii) ~~forall x. A(x) |- forall x. A(x)
    let mut b = ProofBuilder::new(System::NsfP);
    let all = Formula::forall("x", px());
    let (h, _) = b.hyp(not(not(all.clone())));
    let ww = ww_from_nn(&mut b, h);
    let r = b.st(ww);
    out.push(entry("prevalent_vii", b, r, vec![not(not(all))]));

    // (viii) exists x. ~~A(x) |- ~~exists x. A(x)
    let mut b = ProofBuilder::new(System::NsfP);
    let major = Formula::exists("x", not(not(px())));
    let (m, _) = b.hyp(major.clone());
    let (nn, lnn) = b.hyp(not(not(px())));
    let wwp = ww_from_nn(&mut b, nn);
    let (p, lp) = b.hyp(px());
    let wwex = exists_loc_i_p(&mut b, p, "x", px(), Term::var("x"));
    let ex = Formula::exists("x", px());
    let bound = b.ww_bind(wwp, &lp, wwex, ex);
    let minor = b.nn_from_ww(bound);
    let r = b.exists_e(m, "x", minor, &lnn, None);
    out.push(entry("prevalent_viii", b, r, vec![major]));

    out
}

fn macros() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut b = ProofBuilder::new(System::Nsf);
    let wwa = Formula::wneg(wneg(pc()));
    let wwi = Formula::wneg(wneg(Formula::implies(pc(), qc())));
    let (ha, _) = b.hyp(wwa.clone());
    let (hi, _) = b.hyp(wwi.clone());
    let r = b.mp_ww(ha, hi);
    out.push(entry("mp_under_wneg", b, r, vec![wwa, wwi]));

    let mut b = ProofBuilder::new(System::Nsf);
    let (h, l) = b.hyp(pc());
    let w = b.ww_i(h);
    let r = b.imp_i(&l, pc(), pc(), w);
    out.push(entry("identity", b, r, vec![]));
    out
}

/// Every fixture derivation, all expected to check.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = basic_facts();
    out.extend(prevalent_lemma());
    out.extend(macros());
    out
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// Applies the second negation introduction rule to `wneg P(c)` while that
/// very hypothesis stays open; the check must flag it.
pub fn broken_neg_i2() -> Derivation {
    let mut b = ProofBuilder::new(System::Nsf);
    let (h, _) = b.hyp(wneg(pc()));
    let r = b.rule(super::rules::Rule::NegI2, not(pc()), &[h]);
    b.finish(r)
}
