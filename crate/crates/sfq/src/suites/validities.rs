use sfq_core::kripke::w0;
use sfq_core::search::{countermodel, random_model, rng_from_seed, FormulaGen, Goal, ModelClass, SearchBounds};
use sfq_core::semantics::{JudgmentKind, Session};
use sfq_core::syntax::{is_gn, is_st, is_st_p, Formula, StMode};

use super::{base_signature, err, f, fs, models, raw, signature, Config, Report};

const CLOSED: &[&str] = &[
    "P(c)",
    "Q(c)",
    "E(c)",
    "~P(c)",
    "wneg Q(c)",
    "P(c) & Q(c)",
    "P(c) | Q(c)",
    "P(c) -> Q(c)",
    "exists x. P(x)",
    "forall x. Q(x)",
];

const SECOND: &[&str] = &["Q(c)", "bot", "P(c) | wneg P(c)"];

const OPEN: &[&str] = &[
    "P(x)",
    "Q(x)",
    "E(x)",
    "P(x) | Q(x)",
    "P(x) -> Q(c)",
    "wneg P(x)",
    "exists y. (P(y) & Q(x))",
    "~P(x) | Q(x)",
];

type Instance = (&'static str, Vec<Formula>, Formula);

/// `(scheme, hypotheses, conclusion)` instances of the seven schemes.
fn instances() -> Result<Vec<Instance>, String> {
    let closed = fs(CLOSED)?;
    let second = fs(SECOND)?;
    let open = fs(OPEN)?;
    let ww = |a: Formula| Formula::wneg(Formula::wneg(a));
    let mut out = Vec::new();
    for a in &closed {
        out.push(("i", vec![], Formula::implies(ww(a.clone()), a.clone())));
        for b in &second {
            let peirce = Formula::implies(Formula::implies(Formula::implies(a.clone(), b.clone()), a.clone()), a.clone());
            out.push(("ii", vec![], peirce));
        }
        out.push(("iii", vec![], ww(Formula::or(a.clone(), Formula::wneg(a.clone())))));
        out.push(("iv", vec![], Formula::or(Formula::not(a.clone()), Formula::not(Formula::not(a.clone())))));
    }
    out.push(("v", vec![], f("forall x. E(x)")?));
    for a in &open {
        let all_ww = Formula::forall("x", ww(a.clone()));
        let all = Formula::forall("x", a.clone());
        out.push(("vi", vec![all_ww.clone()], all.clone()));
        out.push(("vii", vec![], Formula::implies(all_ww, ww(all))));
    }
    Ok(out)
}

/// Every instance holds in every model with at most 4 nodes and 2
/// elements over `c`, `P`, `Q` and `E`.
pub fn famous(r: &mut Report, _: &Config) -> Result<(), String> {
    let inst = instances()?;
    r.check(inst.len() >= 50, || format!("only {} instances", inst.len()));
    let ms = models(base_signature(), 4, 2, ModelClass::All);
    r.note(format!("{} instances on {} models (<= 4 nodes, <= 2 elements)", inst.len(), ms.len()));
    for m in &ms {
        let mut s = Session::new(m);
        for (scheme, gamma, a) in &inst {
            let j = s.consequence(gamma, a).map_err(err)?;
            r.check(j.verdict, || format!("({scheme}) {a} fails at {:?} in {}", j.certificate, raw(m)));
        }
    }
    Ok(())
}

/// Excluded middle and modus ponens fail on the two-node model, and the
/// search finds a two-node witness for each failure.
pub fn failures(r: &mut Report, _: &Config) -> Result<(), String> {
    let m = w0();
    let mut s = Session::new(&m);
    let a = f("E(c)")?;
    let b = f("E(c) -> E(c)")?;
    let lem_w = Formula::or(a.clone(), Formula::wneg(a.clone()));
    let lem_n = Formula::or(a.clone(), Formula::not(a.clone()));
    let expected = [(&a, [false, true]), (&Formula::wneg(a.clone()), [false, false]), (&Formula::not(a.clone()), [false, false])];
    for (x, row) in expected {
        for (k, want) in row.into_iter().enumerate() {
            let got = s.force(k, x).map_err(err)?;
            r.check(got == want, || format!("{x} at {}: {got}", m.frame().name(k)));
        }
    }
    for lem in [&lem_w, &lem_n] {
        let j = s.judge(JudgmentKind::Valid, lem).map_err(err)?;
        let node = j.certificate.as_ref().map(|c| c.node.as_str());
        r.check(!j.verdict && node == Some("r"), || format!("{lem}: {j:?}"));
    }
    let imp = Formula::implies(b.clone(), a.clone());
    let triple = (s.valid(&imp).map_err(err)?, s.valid(&b).map_err(err)?, s.valid(&a).map_err(err)?);
    r.check(triple == (true, true, false), || format!("modus ponens triple on W0: {triple:?}"));
    let ww = Formula::wneg(Formula::wneg(a.clone()));
    let j = s.consequence(&[Formula::and(imp.clone(), b.clone())], &ww).map_err(err)?;
    r.check(j.verdict, || format!("(B -> A) & B does not give wneg wneg A on W0: {j:?}"));

    let bounds = SearchBounds::new(signature(&["c"], &[]), 2, 2, ModelClass::All);
    for lem in [&lem_w, &lem_n] {
        let out = countermodel(&Goal::Valid(lem.clone()), &bounds).map_err(err)?;
        match out.found() {
            Some(c) => {
                r.check(c.model.frame().len() <= 2, || format!("{lem}: witness with {} nodes", c.model.frame().len()));
                let again = sfq_core::semantics::force(&c.model, &c.node, lem).map_err(err)?;
                r.check(!again, || format!("{lem}: certificate node {} forces it", c.node));
            }
            None => {
                r.check(false, || format!("{lem}: no countermodel found"));
            }
        }
    }
    let mut witness = None;
    for cand in sfq_core::search::enumerate_models(&bounds) {
        let mut t = Session::new(&cand);
        if t.valid(&imp).map_err(err)? && t.valid(&b).map_err(err)? && !t.valid(&a).map_err(err)? {
            witness = Some(cand);
            break;
        }
    }
    r.check(witness.as_ref().is_some_and(|w| w.frame().len() <= 2), || "no modus ponens witness with <= 2 nodes".into());
    if let Some(w) = witness {
        r.note(format!("modus ponens witness: {}", raw(&w)));
    }
    Ok(())
}

/// Assertible GN formulas are valid; stable formulas are stable.
pub fn gn_st(r: &mut Report, cfg: &Config) -> Result<(), String> {
    let sig = base_signature();
    let gen = FormulaGen::new(sig.clone(), 3);
    let mut rng = rng_from_seed(cfg.seed);
    r.note(format!("seed {}", cfg.seed));

    // a vacuous quantifier is local: `forall x. N` holds vacuously at a node
    // with no constructed objects above it
    let (gn, vacuous) = split_vacuous(200, || gen.gn(&mut rng));
    for a in gn.iter().chain(&vacuous) {
        r.check(is_gn(a) && a.is_closed(), || format!("generated {a} is not a closed GN formula"));
    }
    let bounds = SearchBounds::new(sig.clone(), 4, 2, ModelClass::All);
    let mut assertible = 0u64;
    let mut vacuous_failures = 0u64;
    for i in 0..500u64 {
        let m = random_model(cfg.seed.wrapping_add(i), &bounds);
        let mut s = Session::new(&m);
        for a in &gn {
            if s.assertible(a).map_err(err)? {
                assertible += 1;
                let v = s.valid(a).map_err(err)?;
                r.check(v, || format!("GN {a} assertible but not valid in {}", raw(&m)));
            }
        }
        for a in &vacuous {
            if s.assertible(a).map_err(err)? && !s.valid(a).map_err(err)? {
                vacuous_failures += 1;
            }
        }
    }
    r.check(assertible > 0, || "no generated GN formula was assertible anywhere".into());
    r.note(format!(
        "{} GN formulas with vacuous quantifiers set aside: assertible but not valid in {vacuous_failures} (formula, model) cases",
        vacuous.len()
    ));
    r.note(format!("200 GN formulas without vacuous quantifiers on 500 random models, {assertible} assertible cases"));

    let (st, st_vacuous) = split_vacuous(200, || gen.st(&mut rng));
    let (st_p, st_p_vacuous) = split_vacuous(200, || gen.st_p(&mut rng));
    for a in st.iter().chain(&st_vacuous) {
        r.check(is_st(a) && a.is_closed(), || format!("generated {a} is not a closed ST formula"));
    }
    for a in st_p.iter().chain(&st_p_vacuous) {
        r.check(is_st_p(a, StMode::Recursive) && a.is_closed(), || format!("generated {a} is not a closed ST_P formula"));
    }
    let proper = st_p.iter().filter(|a| !is_st(a)).count();
    r.check(proper > 0, || "no generated ST_P formula lies outside ST".into());

    let all = models(sig.clone(), 3, 2, ModelClass::All);
    let prevalent = models(sig, 3, 2, ModelClass::Prevalent);
    for (class, forms, vacuous, ms) in [("all", &st, &st_vacuous, &all), ("prevalent", &st_p, &st_p_vacuous, &prevalent)] {
        let mut unstable = 0u64;
        for m in ms {
            let mut s = Session::new(m);
            for a in forms {
                let j = s.stable(a).map_err(err)?;
                r.check(j.verdict, || format!("{a} unstable ({class}) at {:?} in {}", j.certificate, raw(m)));
            }
            for a in vacuous {
                unstable += !s.stable(a).map_err(err)?.verdict as u64;
            }
        }
        r.note(format!(
            "{} stable-fragment formulas with vacuous quantifiers set aside ({class}): unstable in {unstable} (formula, model) cases",
            vacuous.len()
        ));
    }
    r.note(format!(
        "200 ST formulas on {} models, 200 ST_P formulas ({proper} outside ST) on {} prevalent models (<= 3 nodes, <= 2 elements), none with vacuous quantifiers",
        all.len(),
        prevalent.len()
    ));
    Ok(())
}

/// Some quantifier binds a variable that does not occur free in its body.
fn has_vacuous_quantifier(a: &Formula) -> bool {
    a.subformulas().into_iter().any(|b| match b {
        Formula::Forall(x, body) | Formula::Exists(x, body) => !body.occurs_free(x),
        _ => false,
    })
}

/// Draws until `n` formulas without vacuous quantifiers are found; returns
/// them and the others drawn on the way.
fn split_vacuous(n: usize, mut draw: impl FnMut() -> Formula) -> (Vec<Formula>, Vec<Formula>) {
    let (mut plain, mut vacuous) = (Vec::new(), Vec::new());
    while plain.len() < n {
        let a = draw();
        if has_vacuous_quantifier(&a) {
            vacuous.push(a);
        } else {
            plain.push(a);
        }
    }
    (plain, vacuous)
}
