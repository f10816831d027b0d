use sfq_core::generation::GenerationStructure;
use sfq_core::search::{countermodel, Goal, ModelClass, SearchBounds};
use sfq_core::semantics::{classical_force, intuit_valid, Session};
use sfq_core::syntax::Formula;
use sfq_core::transform::{gen_to_int, star, to_classical};

use super::contraction::CORPUS;
use super::{base_signature, err, f, fs, models, raw, signature, Config, Report};

const HTQ_ATOMS: &[&str] = &["P(x)", "Q(x)", "P(c)", "exists y. Q(y)", "P(x) & Q(c)"];
const CD_OUTER: &[&str] = &["Q(c)", "P(c)", "exists y. Q(y)", "P(c) -> Q(c)"];
const CD_INNER: &[&str] = &["P(x)", "Q(x)", "P(x) & Q(c)", "P(x) | Q(x)", "exists y. (P(y) & Q(x))"];

fn htq() -> Result<Vec<Formula>, String> {
    let mut out = Vec::new();
    for a in HTQ_ATOMS {
        for b in HTQ_ATOMS {
            out.push(f(&format!("({a}) | (({a}) -> ({b})) | wneg ({b})"))?.universal_closure());
        }
    }
    Ok(out)
}

fn cd() -> Result<Vec<Formula>, String> {
    let mut out = Vec::new();
    for c in CD_OUTER {
        for a in CD_INNER {
            out.push(f(&format!("(forall x. (({c}) | ({a}))) -> ({c}) | forall x. ({a})"))?);
        }
    }
    Ok(out)
}

/// Two-node prevalent models read classically at the leaf, starred HTQ and
/// CD instances, and a formula separating them from intuitionistic logic.
pub fn suite(r: &mut Report, _: &Config) -> Result<(), String> {
    let two = models(base_signature(), 2, 2, ModelClass::TwoNodePrevalent);
    r.note(format!("{} two-node prevalent models (<= 2 elements)", two.len()));
    r.check(!two.is_empty(), || "no two-node prevalent models".into());
    let e_less: Vec<Formula> = fs(CORPUS)?.into_iter().filter(|a| !a.mentions_predicate("E")).collect();
    for w in &two {
        let phi = to_classical(w).map_err(err)?;
        let mut s = Session::new(w);
        for a in &e_less {
            let leaf = s.assertible(a).map_err(err)?;
            let classical = classical_force(&phi, a, false).map_err(err)?;
            r.check(leaf == classical, || format!("{a}: assertible {leaf}, classical {classical} in {}", raw(w)));
        }
    }

    let (htq, cd) = (htq()?, cd()?);
    r.check(htq.len() >= 20 && cd.len() >= 20, || format!("{} HTQ and {} CD instances", htq.len(), cd.len()));
    r.note(format!("{} HTQ and {} CD instances", htq.len(), cd.len()));
    for (kind, a) in htq.iter().map(|a| ("HTQ", a)).chain(cd.iter().map(|a| ("CD", a))) {
        let starred = star(a).map_err(err)?;
        for w in &two {
            let v = Session::new(w).valid(&starred).map_err(err)?;
            r.check(v, || format!("{kind} {starred} fails in {}", raw(w)));
        }
    }

    let refl = f("exists x. (P(x) -> P(x))")?;
    let bounds = SearchBounds::new(signature(&["c"], &[("P", 1)]), 2, 2, ModelClass::PreconstructiveTwoNodePrevalent);
    match countermodel(&Goal::Valid(refl.clone()), &bounds).map_err(err)?.found() {
        Some(c) => {
            let m = &c.model;
            r.check(m.is_prevalent() && m.is_preconstructive(), || format!("countermodel {} is not preconstructive prevalent", raw(m)));
            let again = sfq_core::semantics::force(m, &c.node, &refl).map_err(err)?;
            r.check(!again, || format!("certificate node {} forces {refl}", c.node));
            let g = GenerationStructure::single("W", m.clone()).map_err(|v| format!("{v:?}"))?;
            let i = gen_to_int(&g).map_err(err)?;
            r.check(intuit_valid(&i, &refl).map_err(err)?, || format!("{refl} not intuitionistically valid on the induced model"));
            r.note(format!("countermodel for {refl}: {} at {}", raw(m), c.node));
        }
        None => {
            r.fail(format!("no preconstructive prevalent countermodel for {refl}"));
        }
    }
    Ok(())
}
