use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::kripke::{w0, w0_with, ClassicalStructure, Extensions, Frame, Interpretation, IntuitionisticModel};
use crate::nodeset::NodeSet;
use crate::syntax::{parse_inferred as p, Signature};

#[test]
fn w0_forcing_examples() {
    let m = w0();
    assert!(!force(&m, "r", &p("E(c) | wneg E(c)").unwrap()).unwrap());
    assert!(force(&m, "r", &p("~E(c) | ~~E(c)").unwrap()).unwrap());
    assert!(force(&m, "r", &p("top").unwrap()).unwrap());
    assert!(force(&m, "k", &p("E(c)").unwrap()).unwrap());
}

#[test]
fn modus_ponens_failure() {
    let m = w0();
    assert!(valid(&m, &p("(E(c) -> E(c)) -> E(c)").unwrap()).unwrap());
    assert!(valid(&m, &p("E(c) -> E(c)").unwrap()).unwrap());
    assert!(!valid(&m, &p("E(c)").unwrap()).unwrap());
    assert!(prevalent(&m, &p("E(c)").unwrap()).unwrap());
    assert!(assertible(&m, &p("E(c)").unwrap()).unwrap());
}

#[test]
fn consequence_examples() {
    let m = w0();
    let gamma = [p("((E(c) -> E(c)) -> E(c)) & (E(c) -> E(c))").unwrap()];
    assert!(consequence(&m, &gamma, &p("wneg wneg E(c)").unwrap()).unwrap());
    assert!(!consequence(&m, &gamma, &p("E(c)").unwrap()).unwrap());
    assert!(consequence(&m, &[], &p("top").unwrap()).unwrap());
    assert!(consequence(&m, &[p("forall x. wneg wneg E(x)").unwrap()], &p("forall x. E(x)").unwrap()).unwrap());
}

#[test]
fn stability_examples() {
    let m = w0();
    assert!(stable_in(&m, &p("top").unwrap()).unwrap());
    assert!(stable_in(&m, &p("E(c) -> E(c)").unwrap()).unwrap());
    assert!(stable_in(&m, &p("~E(c) | (E(c) -> E(c))").unwrap()).unwrap());
    let j = Session::new(&m).stable(&p("E(c)").unwrap()).unwrap();
    assert!(!j.verdict);
    assert_eq!(j.certificate.unwrap().node, "r");
}

#[test]
fn certificates() {
    let m = w0();
    let j = judge(&m, JudgmentKind::Valid, &p("E(c) | wneg E(c)").unwrap()).unwrap();
    assert!(!j.verdict);
    assert_eq!(j.certificate, Some(Certificate { node: "r".into(), instantiation: vec![] }));
    let m = w0_with(Signature::from_parts(&["c"], &[], &[("P", 1)]).unwrap());
    let j = judge(&m, JudgmentKind::Valid, &p("P(x)").unwrap()).unwrap();
    assert_eq!(j.certificate.unwrap().instantiation, vec![("x".to_string(), 0)]);
    let j = judge(&m, JudgmentKind::Prevalent, &p("P(c)").unwrap()).unwrap();
    assert!(!j.verdict);
    assert!(judge(&m, JudgmentKind::Valid, &p("E(x)").unwrap()).unwrap().verdict);
}

#[test]
fn vacuous_quantifier_over_a_gn_body_is_local() {
    let m = w0();
    let a = p("exists x. ~bot").unwrap();
    assert!(crate::syntax::is_gn(&a));
    assert!(assertible(&m, &a).unwrap());
    assert!(!valid(&m, &a).unwrap());
    assert!(valid(&m, &p("~bot").unwrap()).unwrap());
}

#[test]
fn symbol_errors() {
    let m = w0();
    assert_eq!(force(&m, "r", &p("Q(c)").unwrap()), Err(EvalError::UnknownPredicate("Q".into())));
    assert_eq!(force(&m, "r", &p("E(d)").unwrap()), Err(EvalError::UnknownConstant("d".into())));
    assert_eq!(force(&m, "r", &p("E(@7)").unwrap()), Err(EvalError::UnknownName(7)));
    assert_eq!(force(&m, "z", &p("top").unwrap()), Err(EvalError::UnknownNode("z".into())));
}

#[test]
fn neg_is_global_and_wneg_local() {
    let sig = Signature::from_parts(&["c"], &[], &[]).unwrap();
    let frame = Frame::from_parent_indices(&[None, Some(0), Some(0)]).unwrap();
    let mut ext: Extensions = BTreeMap::new();
    ext.entry("E".into()).or_default().insert(vec![0], NodeSet::singleton(1));
    let interp = Interpretation { constants: [("c".to_string(), 0)].into_iter().collect(), functions: BTreeMap::new() };
    let m = crate::kripke::StrictFinModel::new(sig, frame, vec![0], interp, ext).unwrap();
    assert!(force(&m, "2", &p("wneg E(c)").unwrap()).unwrap());
    assert!(!force(&m, "2", &p("~E(c)").unwrap()).unwrap());
    assert!(!valid(&m, &p("wneg E(c) -> ~E(c)").unwrap()).unwrap());
    assert!(valid(&m, &p("~E(c) -> wneg E(c)").unwrap()).unwrap());
}

fn phi_w0() -> ClassicalStructure {
    let m = w0();
    ClassicalStructure {
        signature: m.signature().clone(),
        domain: m.domain().to_vec(),
        interpretation: m.interpretation().clone(),
        extensions: [("E".to_string(), m.ext_at(1, "E"))].into_iter().collect(),
    }
}

#[test]
fn classical_examples() {
    let c = phi_w0();
    assert!(classical_force(&c, &p("E(c) | ~E(c)").unwrap(), false).unwrap());
    assert!(classical_force(&c, &p("exists x. E(x)").unwrap(), false).unwrap());
    assert!(!classical_force(&c, &p("E(c) -> bot").unwrap(), false).unwrap());
    assert!(classical_force(&c, &p("forall x. E(x)").unwrap(), true).unwrap());
}

fn two_node_intuitionistic(p_nodes: NodeSet, q_nodes: NodeSet) -> IntuitionisticModel {
    let sig = Signature::from_parts(&[], &[], &[("P", 0), ("Q", 0)]).unwrap();
    let mut ext: Extensions = BTreeMap::new();
    ext.entry("P".into()).or_default().insert(vec![], p_nodes);
    ext.entry("Q".into()).or_default().insert(vec![], q_nodes);
    let domains = vec![[0].into_iter().collect(), [0].into_iter().collect()];
    IntuitionisticModel::new(sig, Frame::two_node(), domains, Interpretation::default(), ext).unwrap()
}

#[test]
fn intuitionistic_examples() {
    let ups: Vec<NodeSet> = vec![NodeSet::EMPTY, NodeSet::singleton(1), NodeSet::full(2)];
    for &a in &ups {
        for &b in &ups {
            let m = two_node_intuitionistic(a, b);
            assert!(intuit_force(&m, "r", &p("P | (P -> Q) | wneg Q").unwrap()).unwrap());
            assert!(intuit_force(&m, "r", &p("P -> P").unwrap()).unwrap());
        }
    }
    let m = two_node_intuitionistic(NodeSet::EMPTY, NodeSet::singleton(1));
    assert!(!intuit_force(&m, "r", &p("Q | wneg Q").unwrap()).unwrap());
    assert_eq!(intuit_force(&m, "r", &p("~P").unwrap()), Err(EvalError::NegationNotAllowed));
}

#[test]
fn intuitionistic_growing_domain() {
    let sig = Signature::from_parts(&[], &[], &[("P", 1)]).unwrap();
    let mut ext: Extensions = BTreeMap::new();
    ext.entry("P".into()).or_default().insert(vec![1], NodeSet::singleton(1));
    let domains = vec![[0].into_iter().collect(), [0, 1].into_iter().collect()];
    let m = IntuitionisticModel::new(sig, Frame::two_node(), domains, Interpretation::default(), ext).unwrap();
    assert!(intuit_valid(&m, &p("exists x. (P(x) -> P(x))").unwrap()).unwrap());
    assert!(!intuit_valid(&m, &p("forall x. P(x)").unwrap()).unwrap());
    assert!(!intuit_valid(&m, &p("exists x. P(x)").unwrap()).unwrap());
    assert!(intuit_force(&m, "k", &p("exists x. P(x)").unwrap()).unwrap());
    assert_eq!(intuit_force(&m, "r", &p("P(@1)").unwrap()), Err(EvalError::UnknownName(1)));
}
