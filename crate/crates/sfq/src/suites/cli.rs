use std::path::PathBuf;

use sfq_core::kripke::w0;
use sfq_core::semantics::force;

use super::{err, f, Config, Report};
use crate::cli::run;
use crate::docs::{from_json, ModelDocument};

fn fixture(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", rel].iter().collect();
    p.to_string_lossy().into_owned()
}

/// The documented invocations, with their certificates fed back through the
/// library.
pub fn suite(r: &mut Report, _: &Config) -> Result<(), String> {
    let model = fixture("models/w0.json");
    let lem = "E(c) | wneg E(c)";
    let o = run(["sfq", "judge", "--model", &model, "--kind", "valid", lem]);
    r.check(o.code == 1 && o.stdout == "valid: fails\ncertificate: node r\n", || format!("judge: {o:?}"));
    let on_file = from_json::<ModelDocument>(&std::fs::read_to_string(&model).map_err(err)?).map_err(err)?.to_model().map_err(err)?;
    r.check(on_file == w0(), || "models/w0.json is not W0".into());
    r.check(!force(&w0(), "r", &f(lem)?).map_err(err)?, || "certificate node r forces the formula".into());

    let proof = fixture("proofs/basic_iv.proof.json");
    let o = run(["sfq", "proof", "check", "--system", "nsf", &proof]);
    r.check(o.code == 0 && o.stdout == "proof ok (NSF)\nconclusion: ~P(c) | ~~P(c)\nhypotheses: none\n", || format!("proof check: {o:?}"));

    let o = run(["sfq", "parse", "P(t) | ~P(t)"]);
    let lines: Vec<&str> = o.stdout.lines().collect();
    r.check(o.code == 0 && lines.first() == Some(&"formula: P(t) | ~P(t)"), || format!("parse: {o:?}"));
    let after = lines.iter().skip_while(|l| **l != "occurrences:").skip(1).copied().collect::<Vec<_>>();
    r.check(after == ["t: mixed"], || format!("parse occurrences: {after:?}"));

    let o = run(["sfq", "search", "countermodel", "--class", "all", "--max-nodes", "2", "--max-domain", "1", lem]);
    let found = o.code == 1 && o.stdout.starts_with("countermodel: node ");
    r.check(found, || format!("search: {o:?}"));
    if found {
        let (head, body) = o.stdout.split_once('\n').unwrap_or_default();
        let node = head.trim_start_matches("countermodel: node ").split([' ', ',']).next().unwrap_or_default();
        let m = from_json::<ModelDocument>(body).map_err(err)?.to_model().map_err(err)?;
        r.check(!force(&m, node, &f(lem)?).map_err(err)?, || format!("search certificate node {node} forces {lem}"));
    }
    let o = run(["sfq", "judge", "--model", "missing.json", "--kind", "valid", lem]);
    r.check(o.code == 2 && o.stdout.is_empty(), || format!("missing file: {o:?}"));
    Ok(())
}
