use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::*;
use crate::kripke::{all_tuples, Extensions, Frame, Interpretation, StrictFinModel};
use crate::nodeset::NodeSet;
use crate::syntax::{is_gn, is_st, is_st_p, parse, ElemId, Formula, Signature, StMode};

fn sig(consts: &[&str], preds: &[(&str, usize)]) -> Signature {
    Signature::from_parts(consts, &[], preds).unwrap()
}

fn count(bounds: &SearchBounds) -> usize {
    enumerate_models(bounds).count()
}

#[test]
fn hand_counts() {
    let e = Signature::existence_only();
    assert_eq!(count(&SearchBounds::new(e.clone(), 1, 1, ModelClass::All)), 2);
    assert_eq!(count(&SearchBounds::new(e.clone(), 2, 1, ModelClass::All)), 2 + 3);
    assert_eq!(count(&SearchBounds::new(e.clone(), 3, 1, ModelClass::All)), 2 + 3 + 4 + 4);
    assert_eq!(count(&SearchBounds::new(e.clone(), 1, 2, ModelClass::All)), 2 + 3);
    assert_eq!(count(&SearchBounds::new(e.clone(), 2, 1, ModelClass::Prevalent)), 1 + 2);
}

#[test]
fn preconstructive_two_node_is_w0_shape() {
    let b = SearchBounds::new(Signature::existence_only(), 2, 1, ModelClass::PreconstructiveTwoNodePrevalent);
    let ms: Vec<StrictFinModel> = enumerate_models(&b).collect();
    assert_eq!(ms.len(), 1);
    let m = &ms[0];
    assert_eq!(m.frame().len(), 2);
    assert_eq!(m.existence(0), NodeSet::singleton(1));
}

/// Parent-preserving node permutations, by brute force over all
/// permutations.
fn node_automorphisms(f: &Frame) -> Vec<Vec<usize>> {
    let n = f.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, f: &Frame, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            if (0..perm.len()).all(|i| f.parent(perm[i]) == f.parent(i).map(|p| perm[p])) {
                out.push(perm.clone());
            }
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, f, out);
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut perm, f, &mut out);
    out
}

fn elem_perms(m: usize) -> Vec<Vec<ElemId>> {
    let dom: Vec<ElemId> = (0..m as ElemId).collect();
    all_tuples(&dom, m).into_iter().filter(|t| t.iter().collect::<BTreeSet<_>>().len() == m).collect()
}

fn key(m: &StrictFinModel, sigma: &[usize], pi: &[ElemId]) -> Vec<(String, Vec<ElemId>, u128)> {
    let mut out = Vec::new();
    for (c, d) in &m.interpretation().constants {
        out.push((c.clone(), Vec::new(), pi[*d as usize] as u128));
    }
    for (p, table) in m.extensions() {
        for (t, s) in table {
            let img: NodeSet = s.iter().map(|k| sigma[k]).collect();
            out.push((p.clone(), t.iter().map(|x| pi[*x as usize]).collect(), img.bits()));
        }
    }
    out.sort();
    out
}

/// Isomorphism classes found by validating every raw assignment.
fn brute_force(bounds: &SearchBounds) -> usize {
    let mut total = 0;
    let s = &bounds.signature;
    let ns: Vec<usize> = if matches!(bounds.class, ModelClass::TwoNodePrevalent | ModelClass::PreconstructiveTwoNodePrevalent) {
        alloc::vec![2]
    } else {
        (1..=bounds.max_nodes).collect()
    };
    for n in ns {
        for frame in shapes(n) {
            let autos = node_automorphisms(&frame);
            for m in 1..=bounds.max_domain {
                let dom: Vec<ElemId> = (0..m as ElemId).collect();
                let mut atoms = Vec::new();
                for (p, k) in s.predicates() {
                    for t in all_tuples(&dom, *k) {
                        atoms.push((p.clone(), t));
                    }
                }
                let mut seen = BTreeSet::new();
                for consts in all_tuples(&dom, s.constants().len()) {
                    let mut interp = Interpretation::default();
                    for (c, d) in s.constants().iter().zip(&consts) {
                        interp.constants.insert(c.clone(), *d);
                    }
                    let subsets = 1u128 << n;
                    let radix = subsets as usize;
                    let total_raw = radix.pow(atoms.len() as u32);
                    for code in 0..total_raw {
                        let mut c = code;
                        let mut ext = Extensions::new();
                        for (p, t) in &atoms {
                            ext.entry(p.clone()).or_default().insert(t.clone(), NodeSet::from_bits((c % radix) as u128));
                            c /= radix;
                        }
                        let Ok(model) = StrictFinModel::new(s.clone(), frame.clone(), dom.clone(), interp.clone(), ext) else {
                            continue;
                        };
                        if !bounds.class.contains(&model, bounds.max_term_depth) {
                            continue;
                        }
                        let k = autos.iter().flat_map(|sg| elem_perms(m).into_iter().map(move |pi| (sg.clone(), pi)))
                            .map(|(sg, pi)| key(&model, &sg, &pi))
                            .min()
                            .unwrap();
                        seen.insert(k);
                    }
                }
                total += seen.len();
            }
        }
    }
    total
}

#[test]
fn enumeration_matches_brute_force() {
    let cases = [
        (sig(&[], &[]), 3, 2),
        (sig(&[], &[("P", 1)]), 3, 1),
        (sig(&["c"], &[("P", 1)]), 2, 2),
        (sig(&[], &[("P", 0)]), 3, 1),
        (sig(&[], &[("R", 2)]), 2, 1),
    ];
    for (s, n, m) in cases {
        for class in ModelClass::ALL {
            let b = SearchBounds::new(s.clone(), n, m, class);
            assert_eq!(count(&b), brute_force(&b), "{class} {n} {m} {s:?}");
        }
    }
}

#[test]
fn emitted_models_match_class() {
    let s = sig(&["c"], &[("P", 1)]);
    for class in ModelClass::ALL {
        let b = SearchBounds::new(s.clone(), 3, 2, class);
        for m in enumerate_models(&b) {
            assert!(class.contains(&m, b.max_term_depth));
            assert!(m.to_raw().validate().is_ok());
        }
    }
}

#[test]
fn enumeration_with_functions() {
    let s = Signature::from_parts(&["c"], &[("f", 1)], &[]).unwrap();
    let b = SearchBounds::new(s, 2, 2, ModelClass::All);
    let ms: Vec<_> = enumerate_models(&b).collect();
    assert!(!ms.is_empty());
    for m in &ms {
        for k in 0..m.frame().len() {
            let ek: Vec<ElemId> = m.domain().iter().copied().filter(|&d| m.existence(d).contains(k)).collect();
            assert_eq!(m.interpretation().preimage_closure(ek.iter().copied()).len(), ek.len());
        }
    }
}

#[test]
fn countermodel_examples() {
    let s = sig(&["c"], &[("P", 1)]);
    let b = SearchBounds::new(s.clone(), 3, 2, ModelClass::All);
    let lem = parse("E(c) | wneg E(c)", &s).unwrap();
    let found = countermodel(&Goal::Valid(lem), &b).unwrap();
    let c = found.found().expect("witness");
    assert_eq!(c.model.frame().len(), 2);
    assert_eq!(c.node, "r");
    assert!(c.model.is_preconstructive());

    let hyps = alloc::vec![parse("wneg P(c)", &s).unwrap(), parse("~~P(c)", &s).unwrap()];
    let goal = Goal::Consequence(hyps, parse("~P(c)", &s).unwrap());
    assert!(countermodel(&goal, &b).unwrap().found().is_some());

    let wlem = parse("~P(c) | ~~P(c)", &s).unwrap();
    match countermodel(&Goal::Valid(wlem), &b).unwrap() {
        SearchOutcome::Exhausted { searched } => assert_eq!(searched as usize, count(&b)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn countermodel_is_minimal() {
    let s = sig(&["c"], &[("P", 1), ("Q", 1)]);
    // holds on every chain, fails on the three-node fork
    let a = parse("(P(c) -> Q(c)) | (Q(c) -> P(c))", &s).unwrap();
    let b = SearchBounds::new(s.clone(), 4, 1, ModelClass::All);
    let c = countermodel(&Goal::Valid(a.clone()), &b).unwrap();
    let c = c.found().expect("witness");
    assert_eq!(c.model.frame().len(), 3);
    assert!(!c.model.frame().is_linear());
    let smaller = SearchBounds::new(s, 2, 1, ModelClass::All);
    assert!(countermodel(&Goal::Valid(a), &smaller).unwrap().found().is_none());
}

#[test]
fn random_models() {
    let s = sig(&["c"], &[("P", 1), ("Q", 1)]);
    let b = SearchBounds::new(s.clone(), 4, 2, ModelClass::Prevalent);
    assert_eq!(random_model(1, &b), random_model(1, &b));
    let mut linear = 0;
    let mut branching = 0;
    for seed in 0..1000 {
        let m = random_model(seed, &b);
        assert!(m.is_prevalent());
        if m.frame().is_linear() {
            linear += 1;
        } else {
            branching += 1;
        }
    }
    assert!(linear > 0 && branching > 0);
    for class in ModelClass::ALL {
        let fs = Signature::from_parts(&["c"], &[("f", 1)], &[("P", 1)]).unwrap();
        let b = SearchBounds::new(fs, 4, 3, class);
        for seed in 0..200 {
            assert!(class.contains(&random_model(seed, &b), b.max_term_depth), "{class} {seed}");
        }
    }
}

#[test]
fn random_formulas_fall_in_fragments() {
    let s = sig(&["c"], &[("P", 1), ("Q", 1)]);
    let g = FormulaGen::new(s, 3);
    let mut rng = rng_from_seed(7);
    let mut stp_only = 0;
    for _ in 0..500 {
        let a: Formula = g.any(&mut rng);
        assert!(a.is_closed());
        let n = g.gn(&mut rng);
        assert!(n.is_closed() && is_gn(&n), "{n:?}");
        let st = g.st(&mut rng);
        assert!(st.is_closed() && is_st(&st));
        let sp = g.st_p(&mut rng);
        assert!(sp.is_closed() && is_st_p(&sp, StMode::Recursive));
        if !is_st(&sp) {
            stp_only += 1;
        }
    }
    assert!(stp_only > 0);
}
