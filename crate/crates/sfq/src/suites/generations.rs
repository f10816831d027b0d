use std::collections::BTreeMap;

use sfq_core::generation::{
    gen_existence, gen_force, gen_forced, gen_forced_with, gen_valid, random_structure, ForallGuard, GenViolation,
    GenerationStructure, NodeInGeneration, StructureBounds,
};
use sfq_core::kripke::{w0_with, Extensions, Frame, Interpretation, IntuitionisticModel, StrictFinModel};
use sfq_core::search::{rng_from_seed, FormulaGen};
use sfq_core::semantics::{intuit_force_at, intuit_valid};
use sfq_core::syntax::{Formula, Signature, Term};
use sfq_core::transform::{gen_to_int, int_to_gen, unstar};
use sfq_core::NodeSet;

use super::{base_signature, err, f, fs, Config, Report};

type Atom<'a> = (&'a str, &'a [u32], &'a [&'a str]);
type Table<'a> = &'a [(&'a [u32], u32)];

/// A model over named nodes; each atom lists the nodes forcing it.
fn model(
    sig: &Signature,
    nodes: &[(&str, Option<&str>)],
    domain: &[u32],
    constants: &[(&str, u32)],
    functions: &[(&str, Table<'_>)],
    atoms: &[Atom<'_>],
) -> Result<StrictFinModel, String> {
    let named: Vec<(String, Option<String>)> = nodes.iter().map(|(n, p)| (n.to_string(), p.map(str::to_string))).collect();
    let frame = Frame::from_named(&named).map_err(|e| format!("{e:?}"))?;
    let interp = Interpretation {
        constants: constants.iter().map(|(c, d)| (c.to_string(), *d)).collect(),
        functions: functions.iter().map(|(g, t)| (g.to_string(), t.iter().map(|(a, v)| (a.to_vec(), *v)).collect())).collect(),
    };
    let mut ext: Extensions = BTreeMap::new();
    for (p, tuple, at) in atoms {
        let set: NodeSet = at.iter().map(|n| frame.index_of(n).expect("named node")).collect();
        ext.entry(p.to_string()).or_default().insert(tuple.to_vec(), set);
    }
    StrictFinModel::new(sig.clone(), frame, domain.to_vec(), interp, ext).map_err(|v| format!("{v:?}"))
}

const TWO: &[(&str, Option<&str>)] = &[("r", None), ("k", Some("r"))];

fn pair(a: StrictFinModel, b: StrictFinModel) -> Result<GenerationStructure, Vec<GenViolation>> {
    GenerationStructure::chain(vec![("A".into(), a), ("B".into(), b)])
}

/// W0 followed by a generation adding a node above `k` and element 1.
fn w0_chain(sig: &Signature) -> Result<GenerationStructure, String> {
    let nodes = [("r", None), ("k", Some("r")), ("k2", Some("k"))];
    let later = model(sig, &nodes, &[0, 1], &[("c", 0)], &[], &[("E", &[0], &["k", "k2"]), ("E", &[1], &["k2"]), ("P", &[1], &["k2"])])?;
    GenerationStructure::chain(vec![("W0".into(), w0_with(sig.clone())), ("W1".into(), later)]).map_err(|v| format!("{v:?}"))
}

fn structure_bounds(postconstructive: bool) -> StructureBounds {
    StructureBounds { signature: base_signature(), max_generations: 3, max_nodes: 3, max_domain: 2, postconstructive }
}

fn fixtures(seed: u64) -> Result<Vec<GenerationStructure>, String> {
    let sig = base_signature();
    let mut out = vec![GenerationStructure::single("W0", w0_with(sig.clone())).map_err(|v| format!("{v:?}"))?, w0_chain(&sig)?];
    let mut rng = rng_from_seed(seed);
    out.extend((0..20).map(|_| random_structure(&mut rng, &structure_bounds(false))));
    Ok(out)
}

/// `r < k` with `D(r) = {0}`, `D(k) = {0, 1}` and `P(1)` at `k`.
fn growing_model() -> Result<IntuitionisticModel, String> {
    let interp = Interpretation { constants: [("c".to_string(), 0)].into_iter().collect(), functions: BTreeMap::new() };
    let domains = vec![[0].into_iter().collect(), [0, 1].into_iter().collect()];
    let mut ext: Extensions = BTreeMap::new();
    ext.entry("P".into()).or_default().insert(vec![1], NodeSet::singleton(1));
    IntuitionisticModel::new(base_signature(), Frame::two_node(), domains, interp, ext).map_err(|v| format!("{v:?}"))
}

/// Nodes of generation `w` at or above `k`.
fn above(g: &GenerationStructure, w: usize, k: usize) -> Vec<NodeInGeneration> {
    g.generation(w).frame().up(k).iter().map(|node| NodeInGeneration { generation: w, node }).collect()
}

fn gname(g: &GenerationStructure, at: NodeInGeneration) -> String {
    format!("({}, {})", g.name(at.generation), g.generation(at.generation).frame().name(at.node))
}

fn clauses(r: &mut Report) -> Result<(), String> {
    let sig = base_signature();
    let w0 = w0_with(sig.clone());
    let e0k: Atom = ("E", &[0], &["k"]);

    let other = model(&sig, &[("r", None), ("j", Some("r"))], &[0], &[("c", 0)], &[], &[("E", &[0], &["j"])])?;
    let v = pair(w0.clone(), other).err().unwrap_or_default();
    r.check(v.iter().any(|e| matches!(e, GenViolation::MissingNode { node, .. } if node == "k")), || format!("(i): {v:?}"));

    let three = [("r", None), ("k", Some("r")), ("m", Some("k"))];
    let fork = [("r", None), ("k", Some("r")), ("m", Some("r"))];
    let chain = model(&sig, &three, &[0], &[("c", 0)], &[], &[("E", &[0], &["k", "m"])])?;
    let forked = model(&sig, &fork, &[0], &[("c", 0)], &[], &[("E", &[0], &["k", "m"])])?;
    let v = pair(chain, forked).err().unwrap_or_default();
    let ok = v.iter().any(|e| matches!(e, GenViolation::NodeOrder { below, above, .. } if below == "k" && above == "m"));
    r.check(ok, || format!("(ii): {v:?}"));

    let big = model(&sig, TWO, &[0, 1], &[("c", 0)], &[], &[e0k, ("E", &[1], &["k"])])?;
    let v = pair(big.clone(), w0.clone()).err().unwrap_or_default();
    r.check(v.iter().any(|e| matches!(e, GenViolation::MissingElement { element: 1, .. })), || format!("(iii): {v:?}"));

    let moved = model(&sig, TWO, &[0, 1], &[("c", 1)], &[], &[e0k, ("E", &[1], &["k"])])?;
    let v = pair(w0.clone(), moved).err().unwrap_or_default();
    r.check(v.iter().any(|e| matches!(e, GenViolation::Constant { constant, .. } if constant == "c")), || format!("(iv) constant: {v:?}"));

    let fsig = Signature::from_parts(&["c"], &[("f", 1)], &[("P", 1)]).map_err(err)?;
    let lower = model(&fsig, TWO, &[0], &[("c", 0)], &[("f", &[(&[0], 0)])], &[e0k])?;
    let upper = model(&fsig, TWO, &[0, 1], &[("c", 0)], &[("f", &[(&[0], 1), (&[1], 1)])], &[e0k, ("E", &[1], &["k"])])?;
    let v = pair(lower, upper).err().unwrap_or_default();
    let ok = v.iter().any(|e| matches!(e, GenViolation::Function { function, args, .. } if function == "f" && args == &[0]));
    r.check(ok, || format!("(iv) function: {v:?}"));

    let with_p = model(&sig, TWO, &[0], &[("c", 0)], &[], &[e0k, ("P", &[0], &["k"])])?;
    let v = pair(with_p.clone(), w0.clone()).err().unwrap_or_default();
    let ok = v.iter().any(|e| matches!(e, GenViolation::Extension { node, predicate, tuple, .. } if node == "k" && predicate == "P" && tuple == &[0]));
    r.check(ok, || format!("(v): {v:?}"));

    for (what, s) in [("W0 then P", pair(w0.clone(), with_p)), ("W0 then a new element", pair(w0, big))] {
        r.check(s.is_ok(), || format!("{what} rejected: {:?}", s.as_ref().err()));
    }
    Ok(())
}

/// Generation structures: validation, prevalence in generation, the two
/// corollaries, the transformations to and from intuitionistic models, and
/// the separating formulas.
pub fn suite(r: &mut Report, cfg: &Config) -> Result<(), String> {
    clauses(r)?;
    let structures = fixtures(cfg.seed)?;
    r.note(format!("{} fixture structures (seed {}, <= 3 generations, <= 3 nodes)", structures.len(), cfg.seed));
    r.check(structures.len() >= 20, || "fewer than 20 fixtures".into());
    r.check(structures.iter().any(|g| g.len() > 1), || "no fixture has several generations".into());

    let mut gen = FormulaGen::new(base_signature(), 3);
    gen.negation = false;
    let mut rng = rng_from_seed(cfg.seed ^ 0x5f);
    let bodies = fs(&["P(x)", "Q(x)", "E(x)", "P(x) -> Q(x)", "P(x) | Q(c)", "exists y. (P(y) & Q(x))", "forall y. (P(y) -> Q(x))"])?;

    for g in &structures {
        let sample: Vec<Formula> = (0..30).map(|_| gen.any(&mut rng)).collect();
        for d in g.elements() {
            let forcing = gen_existence(g, d).map_err(err)?;
            for w in 0..g.len() {
                if !g.generation(w).in_domain(d) {
                    continue;
                }
                for k in 0..g.generation(w).frame().len() {
                    let ok = above(g, w, k).iter().any(|n| forcing.contains(n));
                    r.check(ok, || format!("prevalence (i): E(@{d}) above {}", gname(g, NodeInGeneration { generation: w, node: k })));
                }
            }
        }
        for a in &sample {
            let forced = gen_forced(g, a).map_err(err)?;
            let top = gen_forced_with(g, a, ForallGuard::Top).map_err(err)?;
            r.check(forced == top, || format!("corollary (i): guards disagree on {a}"));
            for w in 0..g.len() {
                let frame = g.generation(w).frame();
                if forced.iter().any(|n| n.generation == w) {
                    for l in 0..frame.len() {
                        let ok = above(g, w, l).iter().any(|n| forced.contains(n));
                        r.check(ok, || format!("prevalence (ii): {a} above {}", gname(g, NodeInGeneration { generation: w, node: l })));
                    }
                }
            }
            for n in &forced {
                let name = g.generation(n.generation).frame().name(n.node);
                for v in 0..g.len() {
                    if !g.order().leq(n.generation, v) {
                        continue;
                    }
                    let Some(at) = g.locate(g.name(v), name) else {
                        r.fail(format!("node {name} missing from {}", g.name(v)));
                        continue;
                    };
                    for m in above(g, v, at.node) {
                        r.check(forced.contains(&m), || format!("persistence of {a} from {} to {}", gname(g, *n), gname(g, m)));
                    }
                }
            }
        }
        let root_name = g.generation(g.root()).frame().name(g.generation(g.root()).frame().root()).to_string();
        for w in 0..g.len() {
            let model = g.generation(w);
            let nodes: Vec<NodeInGeneration> = (0..model.frame().len()).map(|node| NodeInGeneration { generation: w, node }).collect();
            let r_g = g.locate(g.name(w), &root_name).ok_or_else(|| format!("root node missing from {}", g.name(w)))?;
            for body in &bodies {
                let ex = Formula::exists("x", body.clone());
                let ex_forced = gen_forced(g, &ex).map_err(err)?;
                let lhs = nodes.iter().any(|n| ex_forced.contains(n));
                let mut rhs = false;
                for &d in model.domain() {
                    let inst = body.substitute("x", &Term::Name(d)).map_err(err)?;
                    let inst_forced = gen_forced(g, &inst).map_err(err)?;
                    rhs |= nodes.iter().any(|n| inst_forced.contains(n));
                }
                r.check(lhs == rhs, || format!("corollary (ii): {ex} in {}", g.name(w)));
                let all = Formula::forall("x", body.clone());
                let all_forced = gen_forced(g, &all).map_err(err)?;
                let some = nodes.iter().any(|n| all_forced.contains(n));
                r.check(all_forced.contains(&r_g) == some, || format!("forall at the root: {all} in {}", g.name(w)));
            }
            for a in sample.iter().filter(|a| matches!(a, Formula::Implies(..))) {
                let forced = gen_forced(g, a).map_err(err)?;
                let some = nodes.iter().any(|n| forced.contains(n));
                r.check(forced.contains(&r_g) == some, || format!("implication at the root: {a} in {}", g.name(w)));
            }
        }

        let i = gen_to_int(g).map_err(err)?;
        for a in &sample {
            for w in 0..g.len() {
                let lhs = intuit_force_at(&i, w, a).map_err(err)?;
                let forced = gen_forced(g, a).map_err(err)?;
                let rhs = forced.iter().any(|n| n.generation == w);
                r.check(lhs == rhs, || format!("G to I: {a} at {}", g.name(w)));
            }
        }
    }

    gen.existence = false;
    let mut samples = vec![growing_model()?];
    for g in &structures {
        samples.push(gen_to_int(g).map_err(err)?);
    }
    for i in &samples {
        let g = int_to_gen(i).map_err(err)?;
        for _ in 0..25 {
            let a = gen.any(&mut rng);
            for u in 0..i.frame().len() {
                let name = i.frame().name(u);
                let at = g.locate(name, name).ok_or_else(|| format!("({name}, {name}) missing"))?;
                let lhs = intuit_force_at(i, u, &a).map_err(err)?;
                let rhs = gen_force(&g, at, &a).map_err(err)?;
                r.check(lhs == rhs, || format!("I to G: {a} at {name}"));
            }
        }
    }

    let mut rng = rng_from_seed(cfg.seed.wrapping_add(1));
    let post: Vec<GenerationStructure> = (0..10).map(|_| random_structure(&mut rng, &structure_bounds(true))).collect();
    let iqc = iqc_instances()?;
    r.check(iqc.len() >= 30, || format!("only {} IQC instances", iqc.len()));
    r.note(format!("{} IQC instances on {} postconstructive structures", iqc.len(), post.len()));
    for g in &post {
        r.check(g.generations().iter().all(|w| w.is_postconstructive()), || "fixture is not postconstructive".into());
        for a in &iqc {
            r.check(gen_valid(g, a).map_err(err)?, || format!("IQC instance {a} not gen-valid"));
        }
    }

    let refl = f("exists x. (P(x) -> P(x))")?;
    let sep = f("(exists x. (P(x) -> P(x))) | (P(c) -> P(c))")?;
    r.check(unstar(&sep).is_none(), || format!("{sep} is a star image"));
    let mut refuted = 0;
    for g in structures.iter().chain(&post) {
        r.check(gen_valid(g, &sep).map_err(err)?, || format!("{sep} not gen-valid"));
        refuted += !gen_valid(g, &refl).map_err(err)? as usize;
        r.check(intuit_valid(&gen_to_int(g).map_err(err)?, &refl).map_err(err)?, || format!("{refl} not intuitionistically valid"));
    }
    r.check(refuted > 0, || format!("{refl} gen-valid on every fixture"));
    r.note(format!("{refl} refuted on {refuted} fixtures"));
    Ok(())
}

/// Closed instances of intuitionistic theorems without `~` or `E`.
fn iqc_instances() -> Result<Vec<Formula>, String> {
    let atoms = ["P(c)", "Q(c)", "exists x. P(x)", "forall x. Q(x)"];
    let mut out = Vec::new();
    for a in atoms {
        for b in atoms {
            out.push(f(&format!("({a}) -> (({b}) -> ({a}))"))?);
            out.push(f(&format!("(({a}) & ({b})) -> ({a})"))?);
            out.push(f(&format!("({a}) -> (({a}) | ({b}))"))?);
        }
    }
    for s in [
        "(forall x. P(x)) -> P(c)",
        "P(c) -> exists x. P(x)",
        "exists x. (P(x) -> P(x))",
        "(forall x. (P(x) -> Q(x))) -> ((forall x. P(x)) -> forall x. Q(x))",
        "(exists x. (P(x) & Q(x))) -> exists x. P(x)",
        "((P(c) -> Q(c)) & (Q(c) -> P(c))) -> (P(c) -> P(c))",
        "(P(c) | Q(c)) -> (Q(c) | P(c))",
        "(P(c) -> wneg wneg P(c))",
        "wneg (P(c) & wneg P(c))",
        "((exists x. P(x)) -> Q(c)) -> forall x. (P(x) -> Q(c))",
    ] {
        out.push(f(s)?);
    }
    Ok(out)
}
