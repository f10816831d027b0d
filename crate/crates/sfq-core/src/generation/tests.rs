use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::kripke::{w0, w0_with, Extensions, Frame, Interpretation, StrictFinModel};
use crate::nodeset::NodeSet;
use crate::search::rng_from_seed;
use crate::syntax::{parse_inferred as p, Signature};

fn w0_structure() -> GenerationStructure {
    GenerationStructure::single("W0", w0()).unwrap()
}

/// W0 followed by a generation adding a node above `k` and element 1.
fn w0_chain() -> GenerationStructure {
    let sig = w0().signature().clone();
    let frame = Frame::from_named(&[("r".into(), None), ("k".into(), Some("r".into())), ("k2".into(), Some("k".into()))]).unwrap();
    let interp = Interpretation { constants: [("c".into(), 0)].into_iter().collect(), functions: BTreeMap::new() };
    let mut ext: Extensions = BTreeMap::new();
    ext.entry("E".into()).or_default().insert(vec![0], [1, 2].into_iter().collect());
    ext.entry("E".into()).or_default().insert(vec![1], NodeSet::singleton(2));
    let later = StrictFinModel::new(sig, frame, vec![0, 1], interp, ext).unwrap();
    GenerationStructure::chain(vec![("W0".into(), w0()), ("W1".into(), later)]).unwrap()
}

#[test]
fn single_generation() {
    let g = w0_structure();
    let r = g.locate("W0", "r").unwrap();
    let k = g.locate("W0", "k").unwrap();
    assert!(gen_force(&g, r, &p("E(c) -> E(c)").unwrap()).unwrap());
    let ex = p("exists x. E(x)").unwrap();
    assert!(!gen_force(&g, r, &ex).unwrap());
    assert!(gen_force(&g, k, &ex).unwrap());
    assert!(gen_valid(&g, &p("E(c) -> E(c)").unwrap()).unwrap());
    let sig = Signature::from_parts(&["c"], &[], &[("P", 1)]).unwrap();
    let gp = GenerationStructure::single("W0", w0_with(sig)).unwrap();
    assert!(gen_valid(&gp, &p("P(c) -> P(c)").unwrap()).unwrap());
    assert!(!gen_valid(&gp, &p("exists x. (P(x) -> P(x))").unwrap()).unwrap());
}

#[test]
fn chain_is_valid_and_prevalent_in_generation() {
    let g = w0_chain();
    let r0 = g.locate("W0", "r").unwrap();
    let all = p("forall x. E(x)").unwrap();
    assert!(gen_force(&g, r0, &all).unwrap());
    // element 1 only appears in the later generation
    let e1 = p("E(@1)").unwrap();
    assert!(gen_force(&g, g.locate("W1", "k2").unwrap(), &e1).unwrap());
    assert!(gen_force(&g, r0, &e1).is_ok_and(|b| !b));
}

#[test]
fn rejects_shrinking_extension() {
    let sig = Signature::from_parts(&["c"], &[], &[("P", 1)]).unwrap();
    let interp = w0().interpretation().clone();
    let build = |with_p: bool| {
        let mut ext: Extensions = BTreeMap::new();
        ext.entry("E".into()).or_default().insert(vec![0], NodeSet::singleton(1));
        if with_p {
            ext.entry("P".into()).or_default().insert(vec![0], NodeSet::singleton(1));
        }
        StrictFinModel::new(sig.clone(), Frame::two_node(), vec![0], interp.clone(), ext).unwrap()
    };
    let errs = GenerationStructure::chain(vec![("A".into(), build(true)), ("B".into(), build(false))]).unwrap_err();
    assert!(errs.iter().any(|e| matches!(e, GenViolation::Extension { node, predicate, .. } if node == "k" && predicate == "P")));
    assert!(GenerationStructure::chain(vec![("A".into(), build(false)), ("B".into(), build(true))]).is_ok());
}

#[test]
fn negation_is_rejected() {
    let g = w0_structure();
    assert!(gen_force(&g, g.root_node(), &p("~E(c)").unwrap()).is_err());
}

#[test]
fn random_structures_validate() {
    let sig = Signature::from_parts(&["c"], &[("f", 1)], &[("P", 1), ("Q", 0)]).unwrap();
    let b = StructureBounds { signature: sig, max_generations: 3, max_nodes: 3, max_domain: 2, postconstructive: false };
    let mut rng = rng_from_seed(5);
    let mut multi = 0;
    for _ in 0..100 {
        let g = random_structure(&mut rng, &b);
        if g.len() > 1 {
            multi += 1;
        }
        for a in ["forall x. E(x)", "exists x. (P(x) -> P(x))", "Q -> Q", "exists x. P(f(x))"] {
            gen_valid(&g, &p(a).unwrap()).unwrap();
        }
    }
    assert!(multi > 0);
    let pc = StructureBounds { postconstructive: true, ..b };
    for _ in 0..50 {
        let g = random_structure(&mut rng, &pc);
        assert!(g.generations().iter().all(|w| w.is_postconstructive()));
    }
}

#[test]
fn names_of_generations() {
    let g = w0_chain();
    let names: Vec<String> = (0..g.len()).map(|i| g.name(i).into()).collect();
    assert_eq!(names, ["W0", "W1"]);
    assert_eq!(g.height(), 2);
}
