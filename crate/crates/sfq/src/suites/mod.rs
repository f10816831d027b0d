//! Named acceptance suites, one per criterion.

use std::fmt::Display;

use sfq_core::kripke::StrictFinModel;
use sfq_core::search::{enumerate_models, ModelClass, SearchBounds};
use sfq_core::syntax::{parse_inferred, Formula, Signature};

mod bridges;
mod cli;
mod contraction;
mod generations;
mod interchange;
mod ordering;
mod prevalence;
mod proofs;
mod validities;

/// Seed used when `SFQ_SEED` is unset.
pub const DEFAULT_SEED: u64 = 20240601;

/// Settings shared by the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Seed of the randomized suites.
    pub seed: u64,
}

impl Config {
    /// Reads `SFQ_SEED`, falling back to [`DEFAULT_SEED`].
    pub fn from_env() -> Result<Config, String> {
        match std::env::var("SFQ_SEED") {
            Ok(s) => s.trim().parse().map(|seed| Config { seed }).map_err(|_| format!("SFQ_SEED is not an unsigned integer: `{s}`")),
            Err(_) => Ok(Config { seed: DEFAULT_SEED }),
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: DEFAULT_SEED }
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct Report {
    pub criterion: u8,
    pub name: &'static str,
    pub checks: u64,
    pub failed: u64,
    /// The first failures, with witnesses.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

const KEPT_FAILURES: usize = 20;

impl Report {
    pub fn new(criterion: u8, name: &'static str) -> Report {
        Report { criterion, name, checks: 0, failed: 0, failures: Vec::new(), notes: Vec::new() }
    }

    /// Records one check; `what` describes the witness of a failure.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
        ok
    }

    pub fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(what);
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checks > 0
    }

    /// One summary line.
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {}: {} ({} checks, {} failed)",
            self.criterion,
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks,
            self.failed
        )
    }

    /// Summary line, notes and failures.
    pub fn detail(&self) -> String {
        let mut out = self.line();
        for n in &self.notes {
            out.push_str("\n  note: ");
            out.push_str(n);
        }
        for f in &self.failures {
            out.push_str("\n  failure: ");
            out.push_str(f);
        }
        out
    }
}

type Body = fn(&mut Report, &Config) -> Result<(), String>;

/// A named suite.
#[derive(Clone, Copy)]
pub struct Suite {
    pub criterion: u8,
    pub name: &'static str,
    body: Body,
}

impl Suite {
    pub fn run(&self, cfg: &Config) -> Report {
        let mut r = Report::new(self.criterion, self.name);
        if let Err(e) = (self.body)(&mut r, cfg) {
            r.fail(format!("aborted: {e}"));
        }
        r
    }
}

pub const SUITES: [Suite; 12] = [
    Suite { criterion: 1, name: "famous-validities", body: validities::famous },
    Suite { criterion: 2, name: "failures", body: validities::failures },
    Suite { criterion: 3, name: "gn-st", body: validities::gn_st },
    Suite { criterion: 4, name: "proof-corpus", body: proofs::corpus },
    Suite { criterion: 5, name: "soundness", body: proofs::soundness },
    Suite { criterion: 6, name: "prevalence", body: prevalence::calculus },
    Suite { criterion: 7, name: "contraction", body: contraction::suite },
    Suite { criterion: 8, name: "interchange", body: interchange::suite },
    Suite { criterion: 9, name: "bridges", body: bridges::suite },
    Suite { criterion: 10, name: "generation", body: generations::suite },
    Suite { criterion: 11, name: "ordering", body: ordering::suite },
    Suite { criterion: 12, name: "cli", body: cli::suite },
];

/// Looks a suite up by name or criterion number.
pub fn find(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name || name.parse::<u8>().ok() == Some(s.criterion))
}

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

/// Parses suite fixture text.
fn f(text: &str) -> Result<Formula, String> {
    parse_inferred(text).map_err(|e| format!("`{text}`: {e}"))
}

fn fs(texts: &[&str]) -> Result<Vec<Formula>, String> {
    texts.iter().map(|t| f(t)).collect()
}

fn signature(constants: &[&str], predicates: &[(&str, usize)]) -> Signature {
    Signature::from_parts(constants, &[], predicates).expect("suite signatures are well formed")
}

/// The signature of criterion 1: `c`, `P/1`, `Q/1` and `E`.
fn base_signature() -> Signature {
    signature(&["c"], &[("P", 1), ("Q", 1)])
}

fn models(signature: Signature, nodes: usize, domain: usize, class: ModelClass) -> Vec<StrictFinModel> {
    enumerate_models(&SearchBounds::new(signature, nodes, domain, class)).collect()
}

fn raw(m: &StrictFinModel) -> String {
    serde_json::to_string(&crate::docs::ModelDocument::from_model(m)).expect("documents serialize")
}

/// Closed subformulas of `a` without repetition.
fn closed_subformulas(a: &Formula) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::new();
    for b in a.subformulas() {
        if b.is_closed() && !out.contains(b) {
            out.push(b.clone());
        }
    }
    out
}
