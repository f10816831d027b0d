use std::path::Path;
use std::process::Command;

use sfq::docs::{from_json, ModelDocument};
use sfq::suites::{Config, SUITES};

fn sfq(dir: &str, args: &[&str]) -> (i32, String) {
    let cwd = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(dir);
    let out = Command::new(env!("CARGO_BIN_EXE_sfq")).args(args).current_dir(cwd).output().expect("sfq runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

/// The documented invocations through the built binary.
fn binary_examples() -> Vec<String> {
    let mut failures = Vec::new();
    let cases: [(&str, &[&str], i32, &str); 2] = [
        ("models", &["judge", "--model", "w0.json", "--kind", "valid", "E(c) | wneg E(c)"], 1, "valid: fails\ncertificate: node r\n"),
        (
            "proofs",
            &["proof", "check", "--system", "nsf", "basic_iv.proof.json"],
            0,
            "proof ok (NSF)\nconclusion: ~P(c) | ~~P(c)\nhypotheses: none\n",
        ),
    ];
    for (dir, args, code, stdout) in cases {
        let got = sfq(dir, args);
        if got != (code, stdout.to_string()) {
            failures.push(format!("{args:?}: {got:?}"));
        }
    }
    let (code, out) = sfq(".", &["parse", "P(t) | ~P(t)"]);
    if code != 0 || !out.ends_with("occurrences:\nt: mixed\n") {
        failures.push(format!("parse: {code} {out:?}"));
    }
    let (code, out) = sfq(".", &["search", "countermodel", "--max-nodes", "2", "--max-domain", "1", "E(c) | ~E(c)"]);
    match out.split_once('\n') {
        Some((head, body)) if code == 1 => {
            let node = head.trim_start_matches("countermodel: node ").split(' ').next().unwrap_or_default();
            let m = from_json::<ModelDocument>(body).and_then(|d| d.to_model()).expect("certificate model loads");
            let a = sfq_core::syntax::parse(" E(c) | ~E(c)", m.signature()).expect("formula parses");
            if sfq_core::semantics::force(&m, node, &a).expect("node exists") {
                failures.push(format!("search certificate node {node} forces the formula"));
            }
        }
        _ => failures.push(format!("search: {code} {out:?}")),
    }
    failures
}

fn main() {
    let cfg = Config::from_env().expect("SFQ_SEED is valid");
    let mut failed = Vec::new();
    for s in &SUITES {
        let start = std::time::Instant::now();
        let mut r = s.run(&cfg);
        if s.criterion == 12 {
            r.checks += 4;
            for f in binary_examples() {
                r.fail(format!("binary: {f}"));
            }
        }
        println!("{} [{:.1}s]", r.line(), start.elapsed().as_secs_f64());
        if !r.passed() {
            println!("{}", r.detail());
            failed.push(r.criterion);
        }
    }
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
