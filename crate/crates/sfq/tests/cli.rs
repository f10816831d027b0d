use std::path::Path;

use sfq::cli::run;
use sfq::docs::{from_json, ClassicalDocument, GStructureDocument, IntuitionisticDocument, ModelDocument};

fn path(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel).to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    let w0 = path("models/w0.json");
    let chain = path("structures/w0_chain.json");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["eval", "--model", &w0, "--node", "k", "E(c)"], 0),
        (vec!["eval", "--model", &w0, "--node", "r", "E(c)"], 1),
        (vec!["judge", "--model", &w0, "--kind", "assertible", "E(c)"], 0),
        (vec!["judge", "--model", &w0, "--kind", "prevalent", "E(c)"], 0),
        (vec!["judge", "--model", &w0, "--kind", "stable", "E(c)"], 1),
        (vec!["consequence", "--model", &w0, "--hyp", "E(c) -> E(c)", "wneg wneg E(c)"], 0),
        (vec!["consequence", "--model", &w0, "--hyp", "E(c) -> E(c)", "E(c)"], 1),
        (vec!["gen", "judge", "--structure", &chain, "forall x. E(x)"], 0),
        (vec!["gen", "eval", "--structure", &chain, "--generation", "W0", "--node", "r", "exists x. E(x)"], 1),
        (vec!["search", "countermodel", "--class", "prevalent", "--max-nodes", "3", "--max-domain", "1", "~P(c) | ~~P(c)"], 0),
        (vec!["search", "countermodel", "--max-nodes", "2", "--max-domain", "1", "--hyp", "P(c)", "Q(c)"], 1),
        (vec!["judge", "--model", &w0, "--kind", "valid", "Q(c)"], 2),
        (vec!["judge", "--model", &w0, "--kind", "valid", "E(c"], 2),
        (vec!["eval", "--model", &w0, "--node", "z", "E(c)"], 2),
        (vec!["search", "countermodel", "--class", "nonsense", "P(c)"], 2),
        (vec!["search", "countermodel", "--max-nodes", "0", "P(c)"], 2),
        (vec!["transform", "star", "~P(c)"], 2),
        (vec!["suite", "run", "nonsense"], 2),
        (vec!["frobnicate"], 2),
        (vec!["--help"], 0),
        (vec!["suite", "list"], 0),
    ];
    for (args, code) in cases {
        let o = run(std::iter::once("sfq").chain(args.iter().copied()));
        assert_eq!(o.code, code, "{args:?}: {o:?}");
        if code == 2 {
            assert!(o.stdout.is_empty() && !o.stderr.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn transforms_emit_loadable_documents() {
    let w0 = path("models/w0.json");
    let chain = path("structures/w0_chain.json");
    for args in [
        vec!["transform", "contract", "--model", &w0, "E(c)"],
        vec!["transform", "submodel", "--model", &w0, "--node", "k"],
        vec!["transform", "preconstruct", "--model", &w0],
    ] {
        let o = run(std::iter::once("sfq").chain(args.iter().copied()));
        assert_eq!(o.code, 0, "{args:?}: {o:?}");
        from_json::<ModelDocument>(&o.stdout).unwrap().to_model().unwrap();
    }
    let o = run(["sfq", "transform", "classical", "--model", &w0]);
    assert_eq!(o.code, 0, "{o:?}");
    from_json::<ClassicalDocument>(&o.stdout).unwrap();

    let o = run(["sfq", "transform", "gen2int", "--structure", &chain]);
    assert_eq!(o.code, 0, "{o:?}");
    let i = from_json::<IntuitionisticDocument>(&o.stdout).unwrap();
    i.to_model().unwrap();
    let dir = std::env::temp_dir().join(format!("sfq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("int.json");
    std::fs::write(&file, &o.stdout).unwrap();
    let o = run(["sfq", "transform", "int2gen", "--model", file.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{o:?}");
    from_json::<GStructureDocument>(&o.stdout).unwrap().to_structure().unwrap();
    std::fs::remove_dir_all(&dir).unwrap();

    let o = run(["sfq", "transform", "star", "forall x. exists y. P(y)"]);
    assert_eq!(o.stdout, "forall x. wneg wneg exists y. P(y)\n");
}

#[test]
fn json_reports() {
    let w0 = path("models/w0.json");
    let o = run(["sfq", "--json", "judge", "--model", &w0, "--kind", "valid", "E(c) | wneg E(c)"]);
    assert_eq!(o.code, 1);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["certificate"]["node"], "r");
    let o = run(["sfq", "--json", "parse", "P(t) | ~P(t)"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["occurrences"][0]["term"], "t");
    assert_eq!(v["occurrences"][0]["mode"], "mixed");
    let o = run(["sfq", "--json", "proof", "check", "--system", "nsf", &path("proofs/broken_neg_i2.proof.json")]);
    assert_eq!(o.code, 1);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["failures"][0]["step"], 1);
}

#[test]
fn certificates_with_instantiations() {
    let w0 = path("models/w0.json");
    let o = run(["sfq", "judge", "--model", &w0, "--kind", "valid", "wneg E(x)"]);
    assert_eq!((o.code, o.stdout.as_str()), (1, "valid: fails\ncertificate: node r, x = @0\n"));
}
