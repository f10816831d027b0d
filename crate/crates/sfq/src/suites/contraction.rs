use sfq_core::search::ModelClass;
use sfq_core::semantics::Session;
use sfq_core::syntax::Formula;
use sfq_core::transform::{contract, generated_submodel, preconstruct};

use super::{base_signature, closed_subformulas, err, fs, models, raw, Config, Report};

pub(super) const CORPUS: &[&str] = &[
    "P(c)",
    "~P(c)",
    "P(c) | ~P(c)",
    "~P(c) | ~~P(c)",
    "wneg P(c) | wneg wneg P(c)",
    "exists x. P(x)",
    "forall x. P(x)",
    "exists x. ~P(x)",
    "forall x. (P(x) -> Q(x))",
    "exists x. (P(x) -> P(x))",
    "(P(c) -> Q(c)) | (Q(c) -> P(c))",
    "~(exists x. P(x)) -> forall x. ~P(x)",
    "exists x. E(x)",
    "forall x. E(x)",
    "E(c) & P(c)",
    "exists x. (P(x) & ~Q(x))",
    "(exists x. P(x)) -> P(c)",
    "forall x. (P(x) | wneg P(x))",
];

/// Model contraction, strong contraction and the reduction to
/// preconstructive two-node models.
pub fn suite(r: &mut Report, _: &Config) -> Result<(), String> {
    let corpus = fs(CORPUS)?;
    let prevalent = models(base_signature(), 4, 2, ModelClass::Prevalent);
    let two = models(base_signature(), 2, 2, ModelClass::TwoNodePrevalent);
    r.note(format!("{} prevalent models (<= 4 nodes, <= 2 elements), {} two-node prevalent models", prevalent.len(), two.len()));

    // holds[g][a]: gamma = {g} entails a on the class
    let n = corpus.len();
    let mut holds_p = vec![vec![true; n]; n];
    let mut holds_p2 = vec![vec![true; n]; n];
    for w in &prevalent {
        let mut s = Session::new(w);
        for a in &corpus {
            let c = contract(w, a).map_err(err)?;
            r.check(c.frame().len() == 2 && c.is_prevalent(), || format!("W|{a} is not two-node prevalent for {}", raw(w)));
            let mut sc = Session::new(&c);
            for b in closed_subformulas(a) {
                let ok_a = s.assertible(&b).map_err(err)? == sc.force(1, &b).map_err(err)?;
                r.check(ok_a, || format!("assertibility of {b} vs leaf of W|{a} in {}", raw(w)));
                let ok_v = s.valid(&b).map_err(err)? == sc.force(0, &b).map_err(err)?;
                r.check(ok_v, || format!("validity of {b} vs root of W|{a} in {}", raw(w)));
            }
        }
        let forced: Vec<_> = corpus.iter().map(|a| s.forced_nodes(a)).collect::<Result<_, _>>().map_err(err)?;
        for (gi, g) in corpus.iter().enumerate() {
            for (ai, a) in corpus.iter().enumerate() {
                let Some(k) = forced[gi].minus(forced[ai]).first() else { continue };
                holds_p[gi][ai] = false;
                let c = contract(&generated_submodel(w, k), &Formula::and(g.clone(), a.clone())).map_err(err)?;
                let mut sc = Session::new(&c);
                let refutes = c.frame().len() == 2 && c.is_prevalent() && sc.valid(g).map_err(err)? && !sc.valid(a).map_err(err)?;
                r.check(refutes, || format!("contraction at {} does not refute {g} |= {a} in {}", w.frame().name(k), raw(w)));
            }
        }
    }
    for w in &two {
        let mut s = Session::new(w);
        for (gi, g) in corpus.iter().enumerate() {
            for (ai, a) in corpus.iter().enumerate() {
                if !s.consequence(std::slice::from_ref(g), a).map_err(err)?.verdict {
                    holds_p2[gi][ai] = false;
                }
            }
        }
    }
    for gi in 0..n {
        for ai in 0..n {
            r.check(holds_p[gi][ai] == holds_p2[gi][ai], || {
                format!("{} |= {} differs between prevalent and two-node prevalent models", corpus[gi], corpus[ai])
            });
        }
    }

    let pre = models(base_signature(), 2, 2, ModelClass::PreconstructiveTwoNodePrevalent);
    for w in &two {
        let e = preconstruct(w).map_err(err)?;
        r.check(e.is_preconstructive() && e.is_prevalent(), || format!("preconstruction of {} is not preconstructive prevalent", raw(w)));
        let (mut sw, mut se) = (Session::new(w), Session::new(&e));
        for a in &corpus {
            for b in closed_subformulas(a) {
                let leaf = sw.force(1, &b).map_err(err)? == se.force(1, &b).map_err(err)?;
                r.check(leaf, || format!("(i) leaf disagrees on {b} in {}", raw(w)));
                let root = !se.force(0, &b).map_err(err)? || sw.force(0, &b).map_err(err)?;
                r.check(root, || format!("(ii) root of preconstruction forces {b} but {} does not", raw(w)));
            }
        }
    }
    for a in &corpus {
        let mut in_two = true;
        for w in &two {
            in_two &= Session::new(w).valid(a).map_err(err)?;
        }
        let mut in_pre = true;
        for w in &pre {
            in_pre &= Session::new(w).valid(a).map_err(err)?;
        }
        r.check(in_two == in_pre, || format!("(iii) validity of {a}: two-node {in_two}, preconstructive {in_pre}"));
    }
    Ok(())
}
