use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::corpus::{broken_neg_i2, by_name, corpus, CorpusEntry};
use super::*;
use crate::kripke::StrictFinModel;
use crate::search::{countermodel, enumerate_models, Goal, ModelClass, SearchBounds};
use crate::semantics::consequence;
use crate::syntax::{is_gn, parse_inferred as p, Formula, Signature, StMode, Term};

fn sig() -> Signature {
    Signature::from_parts(&["c"], &[], &[("P", 1), ("Q", 1)]).unwrap()
}

fn models(class: ModelClass, nodes: usize) -> Vec<StrictFinModel> {
    enumerate_models(&SearchBounds::new(sig(), nodes, 2, class)).collect()
}

fn open_set(r: &CheckReport) -> Vec<Formula> {
    let mut v = r.open_hypotheses.clone();
    v.sort();
    v.dedup();
    v
}

fn sorted(mut v: Vec<Formula>) -> Vec<Formula> {
    v.sort();
    v.dedup();
    v
}

fn violations(r: &CheckReport) -> Vec<&Violation> {
    r.failures.iter().map(|f| &f.violation).collect()
}

/// Advertised sequents, written independently of the builders.
const SEQUENTS: &[(&str, &[&str], &str)] = &[
    ("basic_i_wneg_to_neg", &["wneg ~P(c)"], "~~P(c)"),
    ("basic_i_neg_to_wneg", &["~~P(c)"], "wneg ~P(c)"),
    ("basic_ii_wneg_to_neg", &[], "~(P(c) & wneg P(c))"),
    ("basic_ii_neg_to_wneg", &[], "wneg (P(c) & wneg P(c))"),
    ("basic_iii", &[], "wneg wneg (P(c) | wneg P(c))"),
    ("basic_iv", &[], "~P(c) | ~~P(c)"),
    ("basic_v", &[], "~P(c) | ~~P(c)"),
    ("basic_vi", &["~~~P(c)"], "~P(c)"),
    ("basic_vii", &["exists x. ~~P(x)"], "~forall x. ~P(x)"),
    ("basic_viii", &["~~exists x. P(x)"], "exists x. ~~P(x)"),
    ("prevalent_i", &["~~P(c)"], "~wneg P(c)"),
    ("prevalent_ii", &["~~P(c) & ~~Q(c)"], "~~(P(c) & Q(c))"),
    ("prevalent_iii", &["~~P(c) & ~Q(c)"], "~(P(c) -> Q(c))"),
    ("prevalent_iv", &["~~(P(c) -> Q(c))"], "~P(c) | ~~Q(c)"),
    ("prevalent_v", &[], "((P(c) -> Q(c)) | (Q(c) -> P(c))) | wneg ((P(c) -> Q(c)) | (Q(c) -> P(c)))"),
    ("prevalent_vi", &["~exists x. ~P(x)"], "forall x. P(x)"),
    ("prevalent_vii", &["~~forall x. P(x)"], "forall x. P(x)"),
    ("prevalent_viii", &["exists x. ~~P(x)"], "~~exists x. P(x)"),
    ("mp_under_wneg", &["wneg wneg P(c)", "wneg wneg (P(c) -> Q(c))"], "wneg wneg Q(c)"),
    ("identity", &[], "P(c) -> P(c)"),
];

#[test]
fn single_top_step() {
    let d = Derivation::new(vec![Step::new("t", Rule::TopI, Formula::Top, vec![])]).unwrap();
    for system in [System::Nsf, System::NsfP] {
        let r = check(&d, system);
        assert!(r.ok);
        assert_eq!(r.conclusion, Formula::Top);
        assert!(r.open_hypotheses.is_empty());
    }
}

#[test]
fn corpus_matches_advertised_sequents() {
    let c = corpus();
    assert_eq!(c.len(), SEQUENTS.len());
    for (name, hyps, concl) in SEQUENTS {
        let e = by_name(name).unwrap_or_else(|| panic!("missing {name}"));
        let expected: Vec<Formula> = hyps.iter().map(|h| p(h).unwrap()).collect();
        assert_eq!(e.conclusion, p(concl).unwrap(), "{name}");
        assert_eq!(sorted(e.hypotheses.clone()), sorted(expected), "{name}");
    }
}

#[test]
fn corpus_checks() {
    for e in corpus() {
        let r = check(&e.derivation, e.system);
        assert!(r.ok, "{}: {:?}", e.name, r.failures);
        assert_eq!(r.conclusion, e.conclusion, "{}", e.name);
        assert_eq!(open_set(&r), sorted(e.hypotheses.clone()), "{}", e.name);
    }
}

#[test]
fn systems_are_where_expected() {
    for e in corpus() {
        let want = if e.name.starts_with("prevalent") { System::NsfP } else { System::Nsf };
        assert_eq!(e.system, want, "{}", e.name);
    }
}

#[test]
fn basic_iv_is_excluded_middle_of_negation() {
    let e = by_name("basic_iv").unwrap();
    let r = check(&e.derivation, System::Nsf);
    assert!(r.ok);
    assert_eq!(r.conclusion, p("~P(c) | ~~P(c)").unwrap());
    assert!(r.open_hypotheses.is_empty());
}

#[test]
fn broken_fixture_is_flagged() {
    let d = broken_neg_i2();
    let r = check(&d, System::Nsf);
    assert!(!r.ok);
    assert_eq!(r.failures.len(), 1);
    assert_eq!(r.failures[0].step, 1);
    assert_eq!(r.failures[0].violation, Violation::NonGnHypothesis(p("wneg P(c)").unwrap()));
}

#[test]
fn wneg_of_gn_is_gn() {
    for s in ["P(c)", "~P(c)", "P(c) & ~P(c)", "exists x. ~P(x)", "bot", "top"] {
        let a = p(s).unwrap();
        assert_eq!(is_gn(&Formula::wneg(a.clone())), is_gn(&a), "{s}");
    }
}

#[test]
fn lifting_into_the_prevalent_system() {
    for e in corpus().into_iter().filter(|e| e.system == System::Nsf) {
        let lifted = lift_to_nsfp(&e.derivation);
        let r = check(&lifted, System::NsfP);
        assert!(r.ok, "{}: {:?}", e.name, r.failures);
        assert_eq!(r.conclusion, e.conclusion, "{}", e.name);
        let before = open_set(&check(&e.derivation, System::Nsf));
        assert!(open_set(&r).iter().all(|h| before.contains(h)), "{}", e.name);
        assert!(lifted.steps().iter().all(|s| s.rule.in_system(System::NsfP)));
    }
}

#[test]
fn lifting_local_universal_rules() {
    // forall x. (P(x) -> P(x)) through the local introduction, using E(x)
    let mut b = ProofBuilder::new(System::Nsf);
    let (e, le) = b.hyp(p("E(x)").unwrap());
    let all = p("forall x. (P(x) -> P(x))").unwrap();
    let (h, l) = b.hyp(p("P(x)").unwrap());
    let w = b.ww_i(h);
    let _ = e;
    let imp = b.imp_i(&l, p("P(x)").unwrap(), p("P(x)").unwrap(), w);
    let ww = b.ww_i(imp);
    let Formula::Forall(_, body) = all.clone() else { unreachable!() };
    let r = b.forall_i("x", *body, ww, "x", Some(&le));
    let d = b.finish(r);
    assert_eq!(d.steps().iter().find(|s| s.rule == Rule::ForallLocI).map(|s| s.discharges.len()), Some(1));
    let rep = check(&d, System::Nsf);
    assert!(rep.ok, "{:?}", rep.failures);
    let lifted = lift_to_nsfp(&d);
    let rep = check(&lifted, System::NsfP);
    assert!(rep.ok, "{:?}", rep.failures);
    assert_eq!(rep.conclusion, all);

    // local elimination with an existence premise
    let mut b = ProofBuilder::new(System::Nsf);
    let (f, _) = b.hyp(p("forall x. P(x)").unwrap());
    let (e, _) = b.hyp(p("E(c)").unwrap());
    let r = b.forall_e(f, Term::constant("c"), Some(e));
    let d = b.finish(r);
    assert!(check(&d, System::Nsf).ok);
    let lifted = lift_to_nsfp(&d);
    let rep = check(&lifted, System::NsfP);
    assert!(rep.ok);
    assert_eq!(rep.open_hypotheses, vec![p("forall x. P(x)").unwrap()]);
}

fn sound_on(e: &CorpusEntry, ms: &[StrictFinModel]) {
    for m in ms {
        assert!(consequence(m, &e.hypotheses, &e.conclusion).unwrap(), "{} fails on {:?}", e.name, m);
    }
}

#[test]
fn corpus_is_sound() {
    let all = models(ModelClass::All, 3);
    let prevalent = models(ModelClass::Prevalent, 3);
    for e in corpus() {
        assert!(e.conclusion.is_closed() && e.hypotheses.iter().all(Formula::is_closed));
        match e.system {
            System::Nsf => sound_on(&e, &all),
            System::NsfP => sound_on(&e, &prevalent),
        }
    }
}

#[test]
fn mp_under_double_wneg_macro() {
    let d = expand_derived(&DerivedRule::MpUnderWneg { a: p("P").unwrap(), b: p("Q").unwrap() }).unwrap();
    let r = check(&d, System::Nsf);
    assert!(r.ok, "{:?}", r.failures);
    assert_eq!(r.conclusion, p("wneg wneg Q").unwrap());
    assert_eq!(open_set(&r), sorted(vec![p("wneg wneg P").unwrap(), p("wneg wneg (P -> Q)").unwrap()]));
}

#[test]
fn identity_macro() {
    let d = expand_derived(&DerivedRule::Identity { a: p("P(c)").unwrap() }).unwrap();
    let r = check(&d, System::Nsf);
    assert!(r.ok);
    assert_eq!(r.conclusion, p("P(c) -> P(c)").unwrap());
    assert!(r.open_hypotheses.is_empty());
    let rules: Vec<Rule> = d.steps().iter().map(|s| s.rule).collect();
    assert!(rules.contains(&Rule::WnegE) && rules.contains(&Rule::ImpI));
}

#[test]
fn exists_loc_intro_macro() {
    let rule = DerivedRule::ExistsLocIP { var: "x".into(), body: p("P(x)").unwrap(), term: Term::constant("c") };
    let d = expand_derived(&rule).unwrap();
    let r = check(&d, System::NsfP);
    assert!(r.ok, "{:?}", r.failures);
    assert_eq!(r.conclusion, p("wneg wneg exists x. P(x)").unwrap());
    assert_eq!(open_set(&r), vec![p("P(c)").unwrap()]);
    assert!(!check(&d, System::Nsf).ok);
    let global = DerivedRule::ExistsLocIP { var: "x".into(), body: p("~P(x)").unwrap(), term: Term::constant("c") };
    assert!(matches!(expand_derived(&global), Err(DerivedError::Parameters(_))));
}

#[test]
fn exists_loc_elim_macro() {
    // P(x) |- wneg wneg exists y. P(y), then eliminate exists x. P(x)
    let mut b = ProofBuilder::new(System::NsfP);
    let h = b.hyp_labelled(p("P(x)").unwrap(), "a");
    let r = exists_loc_i_p(&mut b, h, "y", p("P(y)").unwrap(), Term::var("x"));
    let minor = b.finish(r);
    assert!(check(&minor, System::NsfP).ok);
    let rule = DerivedRule::ExistsLocEP { major: p("exists x. P(x)").unwrap(), var: "x".into(), label: "a".into(), minor };
    let d = expand_derived(&rule).unwrap();
    let r = check(&d, System::NsfP);
    assert!(r.ok, "{:?}", r.failures);
    assert_eq!(r.conclusion, p("wneg wneg exists y. P(y)").unwrap());
    assert_eq!(r.open_hypotheses, vec![p("exists x. P(x)").unwrap()]);
    let wrong = DerivedRule::ExistsLocEP {
        major: p("exists x. P(x)").unwrap(),
        var: "x".into(),
        label: "missing".into(),
        minor: d.clone(),
    };
    assert!(expand_derived(&wrong).is_err());
}

#[test]
fn contraposition_transformer() {
    let fixtures: Vec<(Derivation, Formula)> = vec![
        (by_name("basic_vi").unwrap().derivation, p("~~~P(c)").unwrap()),
        (by_name("basic_vii").unwrap().derivation, p("exists x. ~~P(x)").unwrap()),
        (by_name("basic_viii").unwrap().derivation, p("~~exists x. P(x)").unwrap()),
        (by_name("basic_i_wneg_to_neg").unwrap().derivation, p("wneg ~P(c)").unwrap()),
    ];
    for (d, a) in fixtures {
        let b = d.conclusion().clone();
        let (w, n) = contrapose(&d, &a).unwrap();
        let rw = check(&w, System::Nsf);
        assert!(rw.ok, "{a}: {:?}", rw.failures);
        assert_eq!(rw.conclusion, Formula::wneg(a.clone()));
        assert_eq!(open_set(&rw), vec![Formula::wneg(b.clone())]);
        let rn = check(&n, System::Nsf);
        assert!(rn.ok, "{a}: {:?}", rn.failures);
        assert_eq!(rn.conclusion, Formula::not(a.clone()));
        assert_eq!(open_set(&rn), vec![Formula::not(b)]);
    }
    let mp = by_name("mp_under_wneg").unwrap().derivation;
    assert!(contrapose(&mp, &p("wneg wneg P(c)").unwrap()).is_err());
}

#[test]
fn negative_control() {
    let gamma = vec![p("wneg P(c)").unwrap(), p("~~P(c)").unwrap()];
    let goal = p("~P(c)").unwrap();
    assert!(!corpus().iter().any(|e| e.conclusion == goal && sorted(e.hypotheses.clone()) == sorted(gamma.clone())));
    let bounds = SearchBounds::new(sig(), 3, 1, ModelClass::All);
    let out = countermodel(&Goal::Consequence(gamma.clone(), goal.clone()), &bounds).unwrap();
    let c = out.found().expect("a countermodel");
    assert!(!consequence(&c.model, &gamma, &goal).unwrap());
}

fn single(rule: Rule, concl: &str, prem: &[&str]) -> (Derivation, Vec<String>) {
    let mut b = ProofBuilder::new(System::Nsf);
    let mut labels = Vec::new();
    let nodes: Vec<Node> = prem
        .iter()
        .map(|s| {
            let (n, l) = b.hyp(p(s).unwrap());
            labels.push(l);
            n
        })
        .collect();
    let r = b.rule(rule, p(concl).unwrap(), &nodes);
    (b.finish(r), labels)
}

#[test]
fn side_conditions() {
    let (d, _) = single(Rule::NegI1, "~P(c)", &["wneg P(c)"]);
    assert_eq!(violations(&check(&d, System::Nsf)), [&Violation::NotGn(p("P(c)").unwrap())]);

    let (d, _) = single(Rule::St, "P(c)", &["wneg wneg P(c)"]);
    assert_eq!(violations(&check(&d, System::Nsf)), [&Violation::NotSt(p("P(c)").unwrap())]);

    let (d, _) = single(Rule::StP, "(P -> Q) | (Q -> P)", &["wneg wneg ((P -> Q) | (Q -> P))"]);
    assert!(check(&d, System::NsfP).ok);
    assert!(matches!(violations(&check(&d, System::Nsf))[..], [Violation::RuleNotInSystem { .. }]));
    let (d, _) = single(Rule::StP, "P(c) | Q(c)", &["wneg wneg (P(c) | Q(c))"]);
    assert_eq!(violations(&check(&d, System::NsfP)), [&Violation::NotStP(p("P(c) | Q(c)").unwrap())]);

    let d = Derivation::new(vec![Step::new("a", Rule::Dne, p("~~P(c) -> P(c)").unwrap(), vec![])]).unwrap();
    assert!(check(&d, System::NsfP).ok);
    assert!(!check(&d, System::Nsf).ok);
    let d = Derivation::new(vec![Step::new("a", Rule::Obj, p("forall y. ~~E(y)").unwrap(), vec![])]).unwrap();
    assert!(check(&d, System::NsfP).ok);

    let (d, _) = single(Rule::ForallGloE, "wneg wneg P(c)", &["forall x. P(x)"]);
    assert!(matches!(violations(&check(&d, System::Nsf))[..], [Violation::WrongMode { .. }]));
    let (d, _) = single(Rule::ForallLocE, "wneg wneg P(c)", &["forall x. P(x)", "E(c)"]);
    assert!(check(&d, System::Nsf).ok);
    let (d, _) = single(Rule::ForallLocE, "wneg wneg P(c)", &["forall x. P(x)", "E(d)"]);
    assert!(!check(&d, System::Nsf).ok);
    let (d, _) = single(Rule::ExistsGloI, "exists x. P(x)", &["P(c)"]);
    assert!(matches!(violations(&check(&d, System::Nsf))[..], [Violation::WrongMode { .. }]));
    // vacuous binding counts as local
    let (d, _) = single(Rule::ExistsGloI, "exists x. P(c)", &["P(c)"]);
    assert!(matches!(violations(&check(&d, System::Nsf))[..], [Violation::WrongMode { .. }]));
    let (d, _) = single(Rule::ExistsLocI, "exists x. P(c)", &["P(c)", "E(c)"]);
    assert!(check(&d, System::Nsf).ok);

    let (mut d, _) = single(Rule::ForallEP, "wneg wneg exists y. R(y, y)", &["forall x. exists y. R(x, y)"]);
    let mut steps = d.into_steps();
    steps[1].term = Some(Term::var("y"));
    d = Derivation::new(steps).unwrap();
    assert!(violations(&check(&d, System::NsfP)).contains(&&Violation::NotFreeFor { var: "x".into(), term: Term::var("y") }));

    let (d, _) = single(Rule::ImpE, "wneg wneg Q(c)", &["P(c) -> Q(c)", "Q(c)"]);
    assert!(matches!(violations(&check(&d, System::Nsf))[..], [Violation::Scheme(_)]));
}

#[test]
fn discharge_conditions() {
    let mut b = ProofBuilder::new(System::Nsf);
    let (h, _) = b.hyp(p("P(c)").unwrap());
    let (_, other) = b.hyp(p("Q(c)").unwrap());
    let w = b.ww_i(h);
    let r = b.rule(Rule::ImpI, p("Q(c) -> P(c)").unwrap(), &[w]);
    b.discharge(r, 0, &other);
    let d = b.finish(r);
    let rep = check(&d, System::Nsf);
    assert!(rep.ok);
    assert_eq!(rep.open_hypotheses, vec![p("P(c)").unwrap()]);

    let mut b = ProofBuilder::new(System::Nsf);
    let (h, l) = b.hyp(p("P(c)").unwrap());
    let w = b.ww_i(h);
    let r = b.rule(Rule::ImpI, p("Q(c) -> P(c)").unwrap(), &[w]);
    b.discharge(r, 0, &l);
    let rep = check(&b.finish(r), System::Nsf);
    assert_eq!(violations(&rep), [&Violation::DischargeMismatch { label: l, found: p("P(c)").unwrap() }]);

    let mut b = ProofBuilder::new(System::Nsf);
    let (h, l) = b.hyp(p("P(c)").unwrap());
    let r = b.rule(Rule::AndI, p("P(c) & P(c)").unwrap(), &[h, h]);
    b.discharge(r, 0, &l);
    let rep = check(&b.finish(r), System::Nsf);
    assert_eq!(violations(&rep), [&Violation::UnexpectedDischarge { position: 0 }]);
    // the two citations count as two occurrences
    assert_eq!(rep.open_hypotheses.len(), 2);
}

#[test]
fn eigenvariable_conditions() {
    // P(x) |- forall x. (P(x) | P(x)) must fail
    let mut b = ProofBuilder::new(System::Nsf);
    let (h, _) = b.hyp(p("P(x)").unwrap());
    let or = b.or_i1(h, p("P(x)").unwrap());
    let w = b.ww_i(or);
    let r = b.forall_i("x", p("P(x) | P(x)").unwrap(), w, "x", None);
    let rep = check(&b.finish(r), System::Nsf);
    assert!(violations(&rep).iter().any(|v| matches!(v, Violation::EigenvariableInHypothesis { .. })));

    // E(x) discharged by the local rule is exempt
    let mut b = ProofBuilder::new(System::Nsf);
    let (e, le) = b.hyp(p("E(x)").unwrap());
    let w = b.ww_i(e);
    let r = b.forall_i("x", p("E(x)").unwrap(), w, "x", Some(&le));
    let rep = check(&b.finish(r), System::Nsf);
    assert!(rep.ok, "{:?}", rep.failures);
    assert!(rep.open_hypotheses.is_empty());

    // exists x. ~~P(x) with the minor P-free conclusion depending on x
    let mut b = ProofBuilder::new(System::Nsf);
    let (m, _) = b.hyp(p("exists x. ~~P(x)").unwrap());
    let (a, la) = b.hyp(p("~~P(x)").unwrap());
    let r = b.exists_e(m, "x", a, &la, None);
    let rep = check(&b.finish(r), System::Nsf);
    assert_eq!(violations(&rep), [&Violation::EigenvariableInConclusion { var: "x".into() }]);

    // fresh eigenvariable free in the major premise
    let mut b = ProofBuilder::new(System::Nsf);
    let (m, _) = b.hyp(p("exists x. ~R(x, y)").unwrap());
    let (a, la) = b.hyp(p("~R(y, y)").unwrap());
    let t = b.top_i();
    let _ = a;
    let r = b.exists_e(m, "y", t, &la, None);
    let rep = check(&b.finish(r), System::Nsf);
    assert!(violations(&rep).contains(&&Violation::EigenvariableInMajor { var: "y".into() }));
}

#[test]
fn existence_hypothesis_in_global_elimination() {
    let mut b = ProofBuilder::new(System::Nsf);
    let (m, _) = b.hyp(p("exists x. ~~P(x)").unwrap());
    let (a, la) = b.hyp(p("~~P(x)").unwrap());
    let (e, _) = b.hyp(p("E(x)").unwrap());
    let _ = a;
    let ex = b.exists_i(e, "x", p("E(x)").unwrap(), Term::var("x"), Some(e));
    let r = b.exists_e(m, "x", ex, &la, None);
    let d = b.finish(r);
    let strict = check(&d, System::Nsf);
    assert_eq!(violations(&strict), [&Violation::ExistenceHypothesisInGloE { var: "x".into() }]);
    let lenient = check_with(&d, System::Nsf, &CheckOptions { lenient_exists_glo_e: true, st_mode: StMode::Recursive });
    assert!(lenient.ok);
}

#[test]
fn instance_matching() {
    let a = p("P(x) & forall x. Q(x)").unwrap();
    assert_eq!(match_instance(&a, "x", &p("P(c) & forall x. Q(x)").unwrap()), Ok(Some(Term::constant("c"))));
    assert_eq!(match_instance(&p("P(c)").unwrap(), "x", &p("P(c)").unwrap()), Ok(None));
    assert!(match_instance(&p("R(x, x)").unwrap(), "x", &p("R(c, d)").unwrap()).is_err());
}

#[test]
fn ok_iff_no_failures() {
    let mut all: Vec<(Derivation, System)> = corpus().into_iter().map(|e| (e.derivation, e.system)).collect();
    all.push((broken_neg_i2(), System::Nsf));
    for (d, _) in all {
        for system in [System::Nsf, System::NsfP] {
            let r = check(&d, system);
            assert_eq!(r.ok, r.failures.is_empty());
        }
    }
}
