use sfq_core::search::ModelClass;
use sfq_core::semantics::Session;
use sfq_core::syntax::{quantifier_mode, Formula, QuantMode, Term};

use super::{base_signature, err, fs, models, raw, Config, Report};

const CLOSED: &[&str] = &[
    "P(c)",
    "Q(c)",
    "E(c)",
    "~P(c)",
    "wneg Q(c)",
    "P(c) -> Q(c)",
    "exists x. P(x)",
    "forall x. (P(x) | Q(x))",
];

const BODIES: &[&str] = &[
    "P(x)",
    "E(x)",
    "~P(x)",
    "P(x) | Q(c)",
    "P(x) -> Q(x)",
    "wneg P(x)",
    "~P(x) & ~Q(x)",
    "exists y. (P(y) & ~Q(x))",
    "forall y. (P(y) -> Q(x))",
];

/// The twelve clauses computing assertibility and validity in prevalent
/// models, on every enumerated prevalent model of criterion 1's bounds.
pub fn calculus(r: &mut Report, _: &Config) -> Result<(), String> {
    let closed = fs(CLOSED)?;
    let bodies = fs(BODIES)?;
    let ms = models(base_signature(), 4, 2, ModelClass::Prevalent);
    r.note(format!("{} prevalent models (<= 4 nodes, <= 2 elements), {} closed formulas, {} bodies", ms.len(), closed.len(), bodies.len()));
    for m in &ms {
        let mut s = Session::new(m);
        for a in &closed {
            let aa = s.assertible(a).map_err(err)?;
            let va = s.valid(a).map_err(err)?;
            let na = Formula::not(a.clone());
            let lhs = s.assertible(&na).map_err(err)?;
            r.check(lhs == !aa, || format!("(i)(d) {na} in {}", raw(m)));
            let lhs = s.valid(&na).map_err(err)?;
            r.check(lhs == s.assertible(&na).map_err(err)?, || format!("(ii)(d) {na} in {}", raw(m)));
            for b in &closed {
                let ab = s.assertible(b).map_err(err)?;
                let vb = s.valid(b).map_err(err)?;
                let and = Formula::and(a.clone(), b.clone());
                let or = Formula::or(a.clone(), b.clone());
                let imp = Formula::implies(a.clone(), b.clone());
                let rows = [
                    ("(i)(a)", s.assertible(&and).map_err(err)?, aa && ab, &and),
                    ("(i)(b)", s.assertible(&or).map_err(err)?, aa || ab, &or),
                    ("(i)(c)", s.assertible(&imp).map_err(err)?, !aa || ab, &imp),
                    ("(ii)(a)", s.valid(&and).map_err(err)?, va && vb, &and),
                    ("(ii)(b)", s.valid(&or).map_err(err)?, va || vb, &or),
                    ("(ii)(c)", s.valid(&imp).map_err(err)?, s.assertible(&imp).map_err(err)?, &imp),
                ];
                for (clause, lhs, rhs, x) in rows {
                    r.check(lhs == rhs, || format!("{clause} {x} in {}", raw(m)));
                }
            }
        }
        for body in &bodies {
            let inst: Vec<Formula> =
                m.domain().iter().map(|&d| body.substitute("x", &Term::Name(d))).collect::<Result<_, _>>().map_err(err)?;
            let all = Formula::forall("x", body.clone());
            let ex = Formula::exists("x", body.clone());
            let mut a_inst = Vec::new();
            let mut v_inst = Vec::new();
            let mut v_guarded = Vec::new();
            for (i, b) in inst.iter().enumerate() {
                a_inst.push(s.assertible(b).map_err(err)?);
                v_inst.push(s.valid(b).map_err(err)?);
                let e = Formula::exists_pred(Term::Name(m.domain()[i]));
                v_guarded.push(s.valid(&Formula::and(e, b.clone())).map_err(err)?);
            }
            let a_all = s.assertible(&all).map_err(err)?;
            let a_ex = s.assertible(&ex).map_err(err)?;
            r.check(a_all == a_inst.iter().all(|x| *x), || format!("(i)(e) {all} in {}", raw(m)));
            r.check(a_ex == a_inst.iter().any(|x| *x), || format!("(i)(f) {ex} in {}", raw(m)));
            r.check(s.valid(&all).map_err(err)? == a_all, || format!("(ii)(e) {all} in {}", raw(m)));
            let rhs = match quantifier_mode(body, "x") {
                QuantMode::Global => v_inst.iter().any(|x| *x),
                QuantMode::Local => v_guarded.iter().any(|x| *x),
            };
            r.check(s.valid(&ex).map_err(err)? == rhs, || format!("(ii)(f) {ex} in {}", raw(m)));
        }
    }
    Ok(())
}
