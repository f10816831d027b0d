use sfq_core::search::ModelClass;
use sfq_core::semantics::Session;
use sfq_core::syntax::{analyses, Formula, Shape};
use sfq_core::transform::{mk_member, swap_neg, Direction};

use super::{base_signature, err, f, fs, models, raw, signature, Config, Report};

const QUANTIFIER_FREE: &[&str] = &[
    "~P(c) | ~~P(c)",
    "~(P(c) & ~Q(c))",
    "(~P(c) -> Q(c)) | ~Q(c)",
    "~~P(c) & (Q(c) | ~P(c))",
    "~E(c) | P(c)",
    "~(~P(c) -> wneg Q(c))",
];

const QUANTIFIED: &[&str] = &[
    "~P(c) | ~~P(c)",
    "exists x. (~P(x) -> ~P(x))",
    "exists x. ~P(x)",
    "exists x. (P(x) | ~P(x))",
    "exists x. (~P(x) & Q(x))",
    "exists x. (Q(x) | ~P(x))",
    "forall x. ~P(x) | exists y. ~Q(y)",
    "(exists x. ~P(x)) & ~Q(c)",
    "~Q(c) | exists x. (P(x) & ~Q(x))",
    "exists x. exists y. (~P(x) | Q(y))",
    "forall x. (P(x) -> ~Q(x))",
];

/// Replacement of `~` by `wneg` and back on every enumerated prevalent
/// model, and the listed variants of `~A | ~~A`.
pub fn suite(r: &mut Report, _: &Config) -> Result<(), String> {
    let qf = fs(QUANTIFIER_FREE)?;
    let quantified = fs(QUANTIFIED)?;
    let ms = models(base_signature(), 4, 2, ModelClass::Prevalent);
    r.note(format!("{} prevalent models (<= 4 nodes, <= 2 elements)", ms.len()));
    let mut members = 0u64;
    let mut empty_nodes = 0u64;
    for m in &ms {
        let mut s = Session::new(m);
        for a in &qf {
            let base = s.forced_nodes(a).map_err(err)?;
            for (ctx, b) in analyses(a, Shape::Neg) {
                let swapped = ctx.fill(&Formula::wneg(b));
                let got = s.forced_nodes(&swapped).map_err(err)?;
                r.check(got == base, || format!("{a} vs {swapped} in {}", raw(m)));
            }
        }
        for a in &quantified {
            let with_neg = s.forced_nodes(a).map_err(err)?;
            for (ctx, b) in analyses(a, Shape::Neg) {
                let swapped = ctx.fill(&Formula::wneg(b.clone()));
                let with_wneg = s.forced_nodes(&swapped).map_err(err)?;
                r.check(with_wneg.is_subset(with_neg), || format!("{swapped} forced where {a} is not in {}", raw(m)));
                r.check(with_wneg.is_empty() == with_neg.is_empty(), || format!("assertibility of {a} vs {swapped} in {}", raw(m)));
                for k in 0..m.frame().len() {
                    let member = mk_member(m, k, &ctx, &b).map_err(err)?;
                    members += member as u64;
                    if member && with_neg.contains(k) {
                        r.check(with_wneg.contains(k), || format!("(i) {a} -> {swapped} at {} in {}", m.frame().name(k), raw(m)));
                    }
                    if m.ext_at(k, "E").is_empty() {
                        empty_nodes += 1;
                        if with_wneg.contains(k) {
                            r.check(member && with_neg.contains(k), || format!("(ii) {swapped} at {} in {}", m.frame().name(k), raw(m)));
                        }
                    }
                }
            }
        }
    }
    r.check(members > 0 && empty_nodes > 0, || "membership or empty-existence cases never occurred".into());

    let family = models(signature(&["c"], &[("P", 1), ("Q", 1)]), 2, 2, ModelClass::PreconstructiveTwoNodePrevalent);
    for (a, expected) in [
        ("~P(c) | ~~P(c)", ["wneg P(c) | ~~P(c)", "~P(c) | wneg ~P(c)", "~P(c) | ~wneg P(c)"]),
        ("~Q(c) | ~~Q(c)", ["wneg Q(c) | ~~Q(c)", "~Q(c) | wneg ~Q(c)", "~Q(c) | ~wneg Q(c)"]),
        (
            "~(P(c) & Q(c)) | ~~(P(c) & Q(c))",
            ["wneg (P(c) & Q(c)) | ~~(P(c) & Q(c))", "~(P(c) & Q(c)) | wneg ~(P(c) & Q(c))", "~(P(c) & Q(c)) | ~wneg (P(c) & Q(c))"],
        ),
    ] {
        let got = swap_neg(&f(a)?, Direction::NegToWneg, &family).map_err(err)?;
        let want = fs(&expected)?;
        r.check(got == want, || format!("variants of {a}: {}", got.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
    }
    let neg = f("exists x. (~P(x) -> ~P(x))")?;
    let wn = f("exists x. (wneg P(x) -> wneg P(x))")?;
    let mut neg_valid = true;
    let mut wn_refuted = false;
    for m in &ms {
        let mut s = Session::new(m);
        neg_valid &= s.valid(&neg).map_err(err)?;
        wn_refuted |= !s.valid(&wn).map_err(err)?;
    }
    r.check(neg_valid && wn_refuted, || format!("{neg} valid: {neg_valid}, {wn} refuted: {wn_refuted}"));
    Ok(())
}
