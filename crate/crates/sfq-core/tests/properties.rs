use proptest::prelude::*;

use sfq_core::kripke::StrictFinModel;
use sfq_core::proofs::{check, corpus::corpus, Derivation, Rule, System};
use sfq_core::search::{random_model, ModelClass, SearchBounds};
use sfq_core::semantics::{forced_nodes, valid};
use sfq_core::syntax::{
    analyses, is_gn, occurrence_counts, parse_inferred, render, Formula, FormulaContext, Shape, Signature, Term,
};

fn sig() -> Signature {
    Signature::from_parts(&["c", "d"], &[("f", 1)], &[("P", 1), ("Q", 1), ("R", 2)]).unwrap()
}

fn var() -> impl Strategy<Value = String> {
    prop_oneof![Just("x".to_string()), Just("y".to_string()), Just("z".to_string())]
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        var().prop_map(Term::Var),
        Just(Term::constant("c")),
        Just(Term::constant("d")),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| inner.prop_map(|t| Term::app("f", vec![t])))
}

fn closed_term() -> impl Strategy<Value = Term> {
    prop_oneof![Just(Term::constant("c")), Just(Term::constant("d")), Just(Term::app("f", vec![Term::constant("c")]))]
}

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bot),
        term().prop_map(|t| Formula::atom("P", vec![t])),
        term().prop_map(|t| Formula::atom("Q", vec![t])),
        term().prop_map(Formula::exists_pred),
        (term(), term()).prop_map(|(s, t)| Formula::atom("R", vec![s, t])),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::wneg),
            (var(), inner.clone()).prop_map(|(x, a)| Formula::forall(&x, a)),
            (var(), inner).prop_map(|(x, a)| Formula::exists(&x, a)),
        ]
    })
}

fn quantifier_free() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            inner.prop_map(Formula::not),
        ]
    })
}

fn model(seed: u64) -> StrictFinModel {
    random_model(seed, &SearchBounds::new(sig(), 4, 2, ModelClass::All))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn render_then_parse_is_identity(a in formula()) {
        let text = render(&a);
        prop_assert_eq!(parse_inferred(&text).unwrap(), a, "{}", text);
    }

    #[test]
    fn gn_terms_occur_only_globally(a in formula()) {
        if is_gn(&a) {
            for t in a.terms() {
                prop_assert_eq!(occurrence_counts(&a, &t).non_global, 0, "{} in {}", t, a);
            }
        }
    }

    #[test]
    fn negation_free_gn_has_no_atoms(a in formula()) {
        if is_gn(&a) && !a.has_neg() {
            prop_assert!(a.subformulas().iter().all(|b| !matches!(b, Formula::Atom(..))), "{}", a);
        }
    }

    #[test]
    fn substitutions_compose(a in formula(), t in term(), s in term(), x in var(), y in var()) {
        prop_assume!(x != y && !s.has_var(&x));
        let left = a.substitute(&x, &t).and_then(|b| b.substitute(&y, &s));
        let right = a.substitute(&y, &s).and_then(|b| b.substitute(&x, &t.substitute(&y, &s)));
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn substitution_in_quantifier_free_contexts(a in quantifier_free(), c in closed_term(), x in var()) {
        for (f, b) in analyses(&a, Shape::Neg) {
            prop_assert!(f.is_quantifier_free());
            let (g, b2) = f.substitute_with(&x, &c, &b).unwrap();
            prop_assert_eq!(g.fill(&Formula::not(b2)), a.substitute(&x, &c).unwrap());
            let direct = FormulaContext::fill(&f, &Formula::not(b.clone())).substitute(&x, &c).unwrap();
            prop_assert_eq!(g.fill(&Formula::not(b.substitute(&x, &c).unwrap())), direct);
        }
    }

    #[test]
    fn forcing_persists(a in formula(), seed in any::<u64>()) {
        let m = model(seed);
        let a = a.universal_closure();
        let s = forced_nodes(&m, &a).unwrap();
        prop_assert!(m.frame().is_up_closed(s), "{}", a);
    }

    #[test]
    fn forcing_ignores_bound_variable_names(a in formula(), seed in any::<u64>()) {
        let m = model(seed);
        let a = a.universal_closure();
        prop_assert_eq!(forced_nodes(&m, &a).unwrap(), forced_nodes(&m, &a.alpha_rename()).unwrap());
        prop_assert_eq!(forced_nodes(&m, &a).unwrap(), forced_nodes(&m, &a.alpha_normal()).unwrap());
    }

    #[test]
    fn adjacent_universals_commute(a in formula(), seed in any::<u64>()) {
        let m = model(seed);
        let rest: Vec<String> = a.free_vars().into_iter().filter(|v| v != "x" && v != "y").collect();
        let close = |b: Formula| rest.iter().fold(b, |acc, v| Formula::forall(v, acc));
        let xy = close(Formula::forall("x", Formula::forall("y", a.clone())));
        let yx = close(Formula::forall("y", Formula::forall("x", a)));
        prop_assert_eq!(forced_nodes(&m, &xy).unwrap(), forced_nodes(&m, &yx).unwrap());
    }

    #[test]
    fn weak_negation_follows_from_negation(a in formula(), seed in any::<u64>()) {
        let m = model(seed);
        let a = a.universal_closure();
        let neg = forced_nodes(&m, &Formula::not(a.clone())).unwrap();
        let wneg = forced_nodes(&m, &Formula::wneg(a.clone())).unwrap();
        prop_assert!(neg.is_subset(wneg));
        prop_assert!(valid(&m, &Formula::implies(Formula::not(a.clone()), Formula::wneg(a))).unwrap());
    }

    #[test]
    fn report_ok_iff_no_failures(index in 0usize..20, step in 0usize..64, rule in 0usize..32) {
        let entries = corpus();
        let e = &entries[index % entries.len()];
        let mut steps = e.derivation.steps().to_vec();
        let i = step % steps.len();
        steps[i].rule = Rule::ALL[rule % Rule::ALL.len()];
        if steps[i].rule == Rule::Hyp && steps[i].label.is_none() {
            steps[i].label = Some("m".into());
        }
        if let Ok(d) = Derivation::new(steps) {
            for system in [System::Nsf, System::NsfP] {
                let r = check(&d, system);
                prop_assert_eq!(r.ok, r.failures.is_empty());
                prop_assert_eq!(&r.conclusion, d.conclusion());
            }
        }
    }
}
