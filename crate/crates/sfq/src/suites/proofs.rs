use sfq_core::proofs::corpus::{broken_neg_i2, corpus as fixtures};
use sfq_core::proofs::{check, lift_to_nsfp, CheckReport, System, Violation};
use sfq_core::search::ModelClass;
use sfq_core::semantics::Session;
use sfq_core::syntax::{infer_signature, Formula};

use super::{err, f, fs, models, raw, Config, Report};

/// Advertised sequents, written out independently of the fixture code.
const SEQUENTS: &[(&str, &str, &[&str], &str)] = &[
    ("basic_i_wneg_to_neg", "nsf", &["wneg ~P(c)"], "~~P(c)"),
    ("basic_i_neg_to_wneg", "nsf", &["~~P(c)"], "wneg ~P(c)"),
    ("basic_ii_wneg_to_neg", "nsf", &[], "~(P(c) & wneg P(c))"),
    ("basic_ii_neg_to_wneg", "nsf", &[], "wneg (P(c) & wneg P(c))"),
    ("basic_iii", "nsf", &[], "wneg wneg (P(c) | wneg P(c))"),
    ("basic_iv", "nsf", &[], "~P(c) | ~~P(c)"),
    ("basic_v", "nsf", &[], "~P(c) | ~~P(c)"),
    ("basic_vi", "nsf", &["~~~P(c)"], "~P(c)"),
    ("basic_vii", "nsf", &["exists x. ~~P(x)"], "~forall x. ~P(x)"),
    ("basic_viii", "nsf", &["~~exists x. P(x)"], "exists x. ~~P(x)"),
    ("prevalent_i", "nsfp", &["~~P(c)"], "~wneg P(c)"),
    ("prevalent_ii", "nsfp", &["~~P(c) & ~~Q(c)"], "~~(P(c) & Q(c))"),
    ("prevalent_iii", "nsfp", &["~~P(c) & ~Q(c)"], "~(P(c) -> Q(c))"),
    ("prevalent_iv", "nsfp", &["~~(P(c) -> Q(c))"], "~P(c) | ~~Q(c)"),
    ("prevalent_v", "nsfp", &[], "((P(c) -> Q(c)) | (Q(c) -> P(c))) | wneg ((P(c) -> Q(c)) | (Q(c) -> P(c)))"),
    ("prevalent_vi", "nsfp", &["~exists x. ~P(x)"], "forall x. P(x)"),
    ("prevalent_vii", "nsfp", &["~~forall x. P(x)"], "forall x. P(x)"),
    ("prevalent_viii", "nsfp", &["exists x. ~~P(x)"], "~~exists x. P(x)"),
    ("mp_under_wneg", "nsf", &["wneg wneg P(c)", "wneg wneg (P(c) -> Q(c))"], "wneg wneg Q(c)"),
    ("identity", "nsf", &[], "P(c) -> P(c)"),
];

fn sorted(mut v: Vec<Formula>) -> Vec<Formula> {
    v.sort();
    v.dedup();
    v
}

fn sequent_ok(rep: &CheckReport, hyps: &[Formula], concl: &Formula) -> bool {
    rep.ok && rep.conclusion == *concl && sorted(rep.open_hypotheses.clone()) == sorted(hyps.to_vec())
}

/// Every fixture checks with its advertised sequent, the broken fixture is
/// rejected for the right reason, and lifting to NSF_P preserves checking.
pub fn corpus(r: &mut Report, _: &Config) -> Result<(), String> {
    let entries = fixtures();
    r.check(entries.len() == SEQUENTS.len(), || format!("{} fixtures for {} sequents", entries.len(), SEQUENTS.len()));
    for (name, system, hyps, concl) in SEQUENTS {
        let Some(e) = entries.iter().find(|e| e.name == *name) else {
            r.fail(format!("missing fixture {name}"));
            continue;
        };
        let system = System::from_name(system).expect("known system");
        let hyps = fs(hyps)?;
        let concl = f(concl)?;
        r.check(e.system == system, || format!("{name}: system {}", e.system));
        let rep = check(&e.derivation, system);
        r.check(sequent_ok(&rep, &hyps, &concl), || format!("{name}: {:?}", rep));
        if system == System::Nsf {
            let lifted = lift_to_nsfp(&e.derivation);
            let rep = check(&lifted, System::NsfP);
            r.check(sequent_ok(&rep, &hyps, &concl), || format!("{name} lifted: {:?}", rep.failures));
        }
    }
    let broken = check(&broken_neg_i2(), System::Nsf);
    let target = Violation::NonGnHypothesis(f("wneg P(c)")?);
    r.check(!broken.ok, || "broken fixture accepted".into());
    r.check(broken.failures.iter().any(|x| x.step == 1 && x.violation == target), || format!("broken fixture: {:?}", broken.failures));
    r.check(broken.failures.iter().all(|x| x.violation == target), || format!("broken fixture: extra failures {:?}", broken.failures));
    Ok(())
}

/// Every fixture sequent holds on every enumerated model of its class.
pub fn soundness(r: &mut Report, _: &Config) -> Result<(), String> {
    let entries = fixtures();
    let all: Vec<&Formula> = entries.iter().flat_map(|e| e.hypotheses.iter().chain(std::iter::once(&e.conclusion))).collect();
    let sig = infer_signature(all).map_err(err)?;
    let nsf = models(sig.clone(), 4, 2, ModelClass::All);
    let nsfp = models(sig, 4, 2, ModelClass::Prevalent);
    r.note(format!("{} models for NSF, {} prevalent models for NSF_P (<= 4 nodes, <= 2 elements)", nsf.len(), nsfp.len()));
    for e in &entries {
        let closed = e.conclusion.is_closed() && e.hypotheses.iter().all(Formula::is_closed);
        r.check(closed, || format!("{} is not closed", e.name));
        let rep = check(&e.derivation, e.system);
        if !rep.ok {
            r.fail(format!("{} does not check", e.name));
            continue;
        }
        let ms = if e.system == System::Nsf { &nsf } else { &nsfp };
        for m in ms {
            let j = Session::new(m).consequence(&rep.open_hypotheses, &rep.conclusion).map_err(err)?;
            r.check(j.verdict, || format!("{} fails at {:?} in {}", e.name, j.certificate, raw(m)));
        }
        if e.system == System::Nsf {
            let lifted = lift_to_nsfp(&e.derivation);
            let rep = check(&lifted, System::NsfP);
            for m in &nsfp {
                let j = Session::new(m).consequence(&rep.open_hypotheses, &rep.conclusion).map_err(err)?;
                r.check(j.verdict, || format!("{} lifted fails in {}", e.name, raw(m)));
            }
        }
    }
    Ok(())
}
