//! The `sfq` command line.
//!
//! Exit status: 0 when the judgment holds, the proof checks or no
//! countermodel exists within the bounds; 1 when the judgment fails, the
//! proof is rejected or a countermodel is found; 2 on input errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sfq_core::generation::{gen_force, gen_forced, gen_valid, GenerationStructure};
use sfq_core::kripke::StrictFinModel;
use sfq_core::proofs::{check, System};
use sfq_core::search::{countermodel, Goal, ModelClass, SearchBounds, SearchOutcome};
use sfq_core::semantics::{Certificate, JudgmentKind, Session};
use sfq_core::syntax::{
    infer_signature, is_gn, is_st, is_st_p, occurrence_report, parse_inferred, render, ElemId, Formula, Signature, StMode,
};
use sfq_core::transform::{contract, gen_to_int, generated_submodel, int_to_gen, preconstruct, star, to_classical};

use crate::docs::{
    from_json, parse_formula, to_json, ClassicalDocument, GStructureDocument, IntuitionisticDocument, ModelDocument, ProofDocument,
};
use crate::suites::{self, Config, SUITES};

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Outcome {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn input_error(msg: impl std::fmt::Display) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "sfq", version, about = "Strict finitistic first-order logic: models, judgments, proofs and searches")]
struct Cli {
    /// Machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and classify it.
    Parse { formula: String },
    /// Forcing at one node.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        node: String,
        formula: String,
    },
    /// Validity, assertibility, prevalence or stability in a model.
    Judge {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        formula: String,
    },
    /// Semantic consequence in a model.
    Consequence {
        #[arg(long)]
        model: PathBuf,
        #[arg(long = "hyp")]
        hyps: Vec<String>,
        formula: String,
    },
    /// Natural deduction proofs.
    Proof {
        #[command(subcommand)]
        command: ProofCommand,
    },
    /// Model and formula transformations.
    Transform {
        #[command(subcommand)]
        command: TransformCommand,
    },
    /// Generation structures.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
    /// Bounded countermodel search.
    Search {
        #[command(subcommand)]
        command: SearchCommand,
    },
    /// Acceptance suites.
    Suite {
        #[command(subcommand)]
        command: SuiteCommand,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Valid,
    Assertible,
    Prevalent,
    Stable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SystemArg {
    Nsf,
    Nsfp,
}

#[derive(Subcommand, Debug)]
enum ProofCommand {
    /// Check a proof document.
    Check {
        #[arg(long, value_enum)]
        system: SystemArg,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum TransformCommand {
    /// Two-node contraction relative to a formula.
    Contract {
        #[arg(long)]
        model: PathBuf,
        formula: String,
    },
    /// Submodel generated by a node.
    Submodel {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        node: String,
    },
    /// Empty the root of a two-node prevalent model.
    Preconstruct {
        #[arg(long)]
        model: PathBuf,
    },
    /// Classical structure read off the leaf of a two-node prevalent model.
    Classical {
        #[arg(long)]
        model: PathBuf,
    },
    /// Wrap existential subformulas in double weak negation.
    Star { formula: String },
    /// Intuitionistic model induced by a generation structure.
    Gen2int {
        #[arg(long)]
        structure: PathBuf,
    },
    /// Generation structure built from an intuitionistic model.
    Int2gen {
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Generation forcing at one node-in-generation.
    Eval {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        generation: String,
        #[arg(long)]
        node: String,
        formula: String,
    },
    /// Validity in a generation structure.
    Judge {
        #[arg(long)]
        structure: PathBuf,
        formula: String,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// First countermodel within the bounds, by ascending node count.
    Countermodel {
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long, default_value_t = 3)]
        max_nodes: usize,
        #[arg(long, default_value_t = 2)]
        max_domain: usize,
        #[arg(long = "hyp")]
        hyps: Vec<String>,
        formula: String,
    },
}

#[derive(Subcommand, Debug)]
enum SuiteCommand {
    /// Run a suite by name or criterion number.
    Run { name: String },
    /// List the suites.
    List,
}

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::out(0, text) } else { Outcome { code, stdout: String::new(), stderr: text } };
        }
    };
    match dispatch(cli.command, cli.json) {
        Ok(o) => o,
        Err(e) => Outcome::input_error(e),
    }
}

type Res = Result<Outcome, String>;

fn dispatch(cmd: Command, json: bool) -> Res {
    match cmd {
        Command::Parse { formula } => parse_cmd(&formula, json),
        Command::Eval { model, node, formula } => eval_cmd(&model, &node, &formula, json),
        Command::Judge { model, kind, formula } => judge_cmd(&model, kind, &formula, json),
        Command::Consequence { model, hyps, formula } => consequence_cmd(&model, &hyps, &formula, json),
        Command::Proof { command: ProofCommand::Check { system, file } } => proof_cmd(system, &file, json),
        Command::Transform { command } => transform_cmd(command, json),
        Command::Gen { command } => gen_cmd(command, json),
        Command::Search { command: SearchCommand::Countermodel { class, max_nodes, max_domain, hyps, formula } } => {
            search_cmd(&class, max_nodes, max_domain, &hyps, &formula, json)
        }
        Command::Suite { command } => suite_cmd(command, json),
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_model(path: &Path) -> Result<StrictFinModel, String> {
    let doc: ModelDocument = from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    doc.to_model().map_err(|e| format!("{}: {e}", path.display()))
}

fn load_structure(path: &Path) -> Result<GenerationStructure, String> {
    let doc: GStructureDocument = from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    doc.to_structure().map_err(|e| format!("{}: {e}", path.display()))
}

fn formula_in(text: &str, sig: &Signature) -> Result<Formula, String> {
    parse_formula(text, Some(sig), "formula").map_err(|e| e.to_string())
}

fn node_of(m: &StrictFinModel, node: &str) -> Result<usize, String> {
    m.frame().index_of(node).ok_or_else(|| format!("no node `{node}` in the model"))
}

fn emit(json: bool, code: i32, text: String, value: Value) -> Res {
    Ok(Outcome::out(code, if json { to_json(&value) } else { text }))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn instantiation_text(inst: &[(String, ElemId)]) -> String {
    inst.iter().map(|(x, d)| format!(", {x} = @{d}")).collect()
}

fn instantiation_json(inst: &[(String, ElemId)]) -> Value {
    Value::Object(inst.iter().map(|(x, d)| (x.clone(), json!(d))).collect())
}

fn certificate_json(c: &Option<Certificate>) -> Value {
    match c {
        Some(c) => json!({ "node": c.node, "instantiation": instantiation_json(&c.instantiation) }),
        None => Value::Null,
    }
}

fn certificate_text(c: &Option<Certificate>) -> String {
    match c {
        Some(c) => format!("certificate: node {}{}\n", c.node, instantiation_text(&c.instantiation)),
        None => String::new(),
    }
}

/// The formula as an S-expression.
pub fn sexpr(a: &Formula) -> String {
    match a {
        Formula::Top => "top".into(),
        Formula::Bot => "bot".into(),
        Formula::Atom(p, args) if args.is_empty() => p.clone(),
        Formula::Atom(p, args) => format!("({p} {})", args.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")),
        Formula::And(x, y) => format!("(and {} {})", sexpr(x), sexpr(y)),
        Formula::Or(x, y) => format!("(or {} {})", sexpr(x), sexpr(y)),
        Formula::Implies(x, y) => format!("(implies {} {})", sexpr(x), sexpr(y)),
        Formula::Not(x) => format!("(not {})", sexpr(x)),
        Formula::Forall(v, x) => format!("(forall {v} {})", sexpr(x)),
        Formula::Exists(v, x) => format!("(exists {v} {})", sexpr(x)),
    }
}

fn parse_cmd(text: &str, json: bool) -> Res {
    let a = parse_inferred(text).map_err(|e| format!("`{text}`: {e}"))?;
    let (gn, st, st_p) = (is_gn(&a), is_st(&a), is_st_p(&a, StMode::Recursive));
    let report = occurrence_report(&a);
    let mut out = format!("formula: {}\nast: {}\ngn: {}\nst: {}\nst_p: {}\noccurrences:\n", render(&a), sexpr(&a), yes(gn), yes(st), yes(st_p));
    for e in &report {
        out.push_str(&format!("{}: {}\n", e.term, e.label()));
    }
    let occ: Vec<Value> = report.iter().map(|e| json!({ "term": e.term.to_string(), "mode": e.label() })).collect();
    emit(json, 0, out, json!({ "formula": render(&a), "ast": sexpr(&a), "gn": gn, "st": st, "st_p": st_p, "occurrences": occ }))
}

fn eval_cmd(path: &Path, node: &str, text: &str, json: bool) -> Res {
    let m = load_model(path)?;
    let a = formula_in(text, m.signature())?;
    let k = node_of(&m, node)?;
    let forced = Session::new(&m).force(k, &a).map_err(|e| e.to_string())?;
    let out = format!("{node} forces {}: {}\n", render(&a), yes(forced));
    emit(json, if forced { 0 } else { 1 }, out, json!({ "node": node, "formula": render(&a), "forced": forced }))
}

fn judge_cmd(path: &Path, kind: Kind, text: &str, json: bool) -> Res {
    let m = load_model(path)?;
    let a = formula_in(text, m.signature())?;
    let mut s = Session::new(&m);
    let j = match kind {
        Kind::Valid => s.judge(JudgmentKind::Valid, &a),
        Kind::Assertible => s.judge(JudgmentKind::Assertible, &a),
        Kind::Prevalent => s.judge(JudgmentKind::Prevalent, &a),
        Kind::Stable => s.stable(&a),
    }
    .map_err(|e| e.to_string())?;
    let out = format!("{}: {}\n{}", j.kind.name(), if j.verdict { "holds" } else { "fails" }, certificate_text(&j.certificate));
    let value = json!({
        "judgment": j.kind.name(),
        "formula": render(&a),
        "verdict": j.verdict,
        "certificate": certificate_json(&j.certificate),
    });
    emit(json, if j.verdict { 0 } else { 1 }, out, value)
}

fn consequence_cmd(path: &Path, hyps: &[String], text: &str, json: bool) -> Res {
    let m = load_model(path)?;
    let gamma: Vec<Formula> = hyps.iter().map(|h| formula_in(h, m.signature())).collect::<Result<_, _>>()?;
    let a = formula_in(text, m.signature())?;
    let j = Session::new(&m).consequence(&gamma, &a).map_err(|e| e.to_string())?;
    let out = format!("consequence: {}\n{}", if j.verdict { "holds" } else { "fails" }, certificate_text(&j.certificate));
    let value = json!({
        "judgment": "consequence",
        "hypotheses": gamma.iter().map(render).collect::<Vec<_>>(),
        "formula": render(&a),
        "verdict": j.verdict,
        "certificate": certificate_json(&j.certificate),
    });
    emit(json, if j.verdict { 0 } else { 1 }, out, value)
}

fn proof_cmd(system: SystemArg, path: &Path, json: bool) -> Res {
    let system = match system {
        SystemArg::Nsf => System::Nsf,
        SystemArg::Nsfp => System::NsfP,
    };
    let doc: ProofDocument = from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let d = doc.to_derivation().map_err(|e| format!("{}: {e}", path.display()))?;
    let rep = check(&d, system);
    let mut hyps: Vec<String> = rep.open_hypotheses.iter().map(render).collect();
    hyps.dedup();
    let mut out = format!(
        "proof {} ({})\nconclusion: {}\nhypotheses: {}\n",
        if rep.ok { "ok" } else { "rejected" },
        system.name(),
        render(&rep.conclusion),
        if hyps.is_empty() { "none".to_string() } else { hyps.join("; ") }
    );
    for f in &rep.failures {
        out.push_str(&format!("step {} ({}): {}\n", f.step, f.id, f.violation));
    }
    let failures: Vec<Value> =
        rep.failures.iter().map(|f| json!({ "step": f.step, "id": f.id, "violation": f.violation.to_string() })).collect();
    let value = json!({
        "system": system.name(),
        "ok": rep.ok,
        "conclusion": render(&rep.conclusion),
        "open_hypotheses": hyps,
        "failures": failures,
    });
    emit(json, if rep.ok { 0 } else { 1 }, out, value)
}

fn transform_cmd(cmd: TransformCommand, json: bool) -> Res {
    let text = match cmd {
        TransformCommand::Contract { model, formula } => {
            let m = load_model(&model)?;
            let a = formula_in(&formula, m.signature())?;
            to_json(&ModelDocument::from_model(&contract(&m, &a).map_err(|e| e.to_string())?))
        }
        TransformCommand::Submodel { model, node } => {
            let m = load_model(&model)?;
            let k = node_of(&m, &node)?;
            to_json(&ModelDocument::from_model(&generated_submodel(&m, k)))
        }
        TransformCommand::Preconstruct { model } => {
            let m = load_model(&model)?;
            to_json(&ModelDocument::from_model(&preconstruct(&m).map_err(|e| e.to_string())?))
        }
        TransformCommand::Classical { model } => {
            let m = load_model(&model)?;
            to_json(&ClassicalDocument::from_structure(&to_classical(&m).map_err(|e| e.to_string())?))
        }
        TransformCommand::Star { formula } => {
            let a = parse_inferred(&formula).map_err(|e| format!("`{formula}`: {e}"))?;
            let b = star(&a).map_err(|e| e.to_string())?;
            return emit(json, 0, format!("{}\n", render(&b)), json!({ "formula": render(&a), "star": render(&b) }));
        }
        TransformCommand::Gen2int { structure } => {
            let g = load_structure(&structure)?;
            to_json(&IntuitionisticDocument::from_model(&gen_to_int(&g).map_err(|e| e.to_string())?))
        }
        TransformCommand::Int2gen { model } => {
            let doc: IntuitionisticDocument = from_json(&read(&model)?).map_err(|e| format!("{}: {e}", model.display()))?;
            let i = doc.to_model().map_err(|e| format!("{}: {e}", model.display()))?;
            to_json(&GStructureDocument::from_structure(&int_to_gen(&i).map_err(|e| e.to_string())?))
        }
    };
    Ok(Outcome::out(0, text))
}

fn gen_cmd(cmd: GenCommand, json: bool) -> Res {
    match cmd {
        GenCommand::Eval { structure, generation, node, formula } => {
            let g = load_structure(&structure)?;
            let a = formula_in(&formula, g.generation(g.root()).signature())?;
            let at = g.locate(&generation, &node).ok_or_else(|| format!("no node `{node}` in generation `{generation}`"))?;
            let forced = gen_force(&g, at, &a).map_err(|e| e.to_string())?;
            let out = format!("({generation}, {node}) forces {}: {}\n", render(&a), yes(forced));
            let value = json!({ "generation": generation, "node": node, "formula": render(&a), "forced": forced });
            emit(json, if forced { 0 } else { 1 }, out, value)
        }
        GenCommand::Judge { structure, formula } => {
            let g = load_structure(&structure)?;
            let a = formula_in(&formula, g.generation(g.root()).signature())?;
            let valid = gen_valid(&g, &a).map_err(|e| e.to_string())?;
            let failing = if valid {
                None
            } else {
                let forced = gen_forced(&g, &a).map_err(|e| e.to_string())?;
                g.nodes().into_iter().find(|n| !forced.contains(n))
            };
            let cert = failing.map(|n| (g.name(n.generation).to_string(), g.generation(n.generation).frame().name(n.node).to_string()));
            let mut out = format!("valid: {}\n", if valid { "holds" } else { "fails" });
            if let Some((w, k)) = &cert {
                out.push_str(&format!("certificate: generation {w}, node {k}\n"));
            }
            let value = json!({
                "judgment": "valid",
                "formula": render(&a),
                "verdict": valid,
                "certificate": cert.map(|(w, k)| json!({ "generation": w, "node": k })),
            });
            emit(json, if valid { 0 } else { 1 }, out, value)
        }
    }
}

fn search_cmd(class: &str, max_nodes: usize, max_domain: usize, hyps: &[String], text: &str, json: bool) -> Res {
    let class = ModelClass::from_name(class).ok_or_else(|| format!("unknown model class `{class}`"))?;
    let a = parse_inferred(text).map_err(|e| format!("`{text}`: {e}"))?;
    let gamma: Vec<Formula> = hyps.iter().map(|h| parse_inferred(h).map_err(|e| format!("`{h}`: {e}"))).collect::<Result<_, _>>()?;
    let sig = infer_signature(gamma.iter().chain(std::iter::once(&a))).map_err(|e| e.to_string())?;
    let bounds = SearchBounds::new(sig, max_nodes, max_domain, class);
    bounds.validate().map_err(|e| e.to_string())?;
    let goal = if gamma.is_empty() { Goal::Valid(a) } else { Goal::Consequence(gamma, a) };
    match countermodel(&goal, &bounds).map_err(|e| e.to_string())? {
        SearchOutcome::Found(c) => {
            let doc = ModelDocument::from_model(&c.model);
            let out = format!(
                "countermodel: node {}{} ({} models searched)\n{}",
                c.node,
                instantiation_text(&c.instantiation),
                c.searched,
                to_json(&doc)
            );
            let value = json!({
                "found": true,
                "node": c.node,
                "instantiation": instantiation_json(&c.instantiation),
                "searched": c.searched,
                "model": serde_json::to_value(&doc).map_err(|e| e.to_string())?,
            });
            emit(json, 1, out, value)
        }
        SearchOutcome::Exhausted { searched } => {
            let out = format!("no countermodel within the bounds ({searched} models searched)\n");
            emit(json, 0, out, json!({ "found": false, "searched": searched }))
        }
    }
}

fn suite_cmd(cmd: SuiteCommand, json: bool) -> Res {
    match cmd {
        SuiteCommand::List => {
            let out: String = SUITES.iter().map(|s| format!("{:>2} {}\n", s.criterion, s.name)).collect();
            let value: Vec<Value> = SUITES.iter().map(|s| json!({ "criterion": s.criterion, "name": s.name })).collect();
            emit(json, 0, out, Value::Array(value))
        }
        SuiteCommand::Run { name } => {
            let suite = suites::find(&name).ok_or_else(|| format!("unknown suite `{name}`"))?;
            let r = suite.run(&Config::from_env()?);
            let value = json!({
                "criterion": r.criterion,
                "name": r.name,
                "passed": r.passed(),
                "checks": r.checks,
                "failed": r.failed,
                "notes": r.notes,
                "failures": r.failures,
            });
            emit(json, if r.passed() { 0 } else { 1 }, format!("{}\n", r.detail()), value)
        }
    }
}
