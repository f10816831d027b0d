use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::structure::GenerationStructure;
use crate::kripke::{all_tuples, Extensions, Frame, StrictFinModel};
use crate::nodeset::NodeSet;
use crate::search::{random_model_with, ModelClass, SearchBounds};
use crate::syntax::{ElemId, Signature, EXISTENCE};

/// Limits for random generation structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureBounds {
    pub signature: Signature,
    pub max_generations: usize,
    /// Node limit for each generation.
    pub max_nodes: usize,
    pub max_domain: usize,
    /// Whether every generation must be postconstructive.
    pub postconstructive: bool,
}

/// A random generation structure; later generations extend earlier ones.
pub fn random_structure(rng: &mut impl Rng, b: &StructureBounds) -> GenerationStructure {
    let count = rng.gen_range(1..=b.max_generations.max(1));
    let class = if b.postconstructive { ModelClass::Postconstructive } else { ModelClass::Prevalent };
    let first_nodes = rng.gen_range(1..=b.max_nodes.max(1));
    let first_dom = rng.gen_range(1..=b.max_domain.max(1));
    let root_bounds = SearchBounds::new(b.signature.clone(), first_nodes, first_dom, class);
    let mut models = alloc::vec![random_model_with(rng, &root_bounds)];
    let mut parents: Vec<Option<usize>> = alloc::vec![None];
    for g in 1..count {
        let p = rng.gen_range(0..g);
        let next = extend(rng, &models[p], g, b);
        models.push(next);
        parents.push(Some(p));
    }
    let names = (0..count).map(|g| format!("W{g}")).collect();
    let order = Frame::from_parents(names, parents).expect("generation order is a tree");
    GenerationStructure::new(order, models).expect("extensions satisfy the generation order")
}

fn up_close(f: &Frame, s: NodeSet) -> NodeSet {
    s.iter().fold(NodeSet::EMPTY, |acc, k| acc.union(f.up(k)))
}

/// A later generation: more nodes, elements and verified atoms.
fn extend(rng: &mut impl Rng, w: &StrictFinModel, g: usize, b: &StructureBounds) -> StrictFinModel {
    let old = w.frame();
    let mut named: Vec<(String, Option<String>)> =
        (0..old.len()).map(|k| (String::from(old.name(k)), old.parent(k).map(|p| String::from(old.name(p))))).collect();
    let room = b.max_nodes.saturating_sub(old.len());
    for i in 0..rng.gen_range(0..=room.min(2)) {
        let parent = named[rng.gen_range(0..named.len())].0.clone();
        named.push((format!("g{g}n{i}"), Some(parent)));
    }
    let frame = Frame::from_named(&named).expect("children added to a tree");
    let all = frame.all();
    let leaves = frame.leaves();
    let mut domain: Vec<ElemId> = w.domain().to_vec();
    if domain.len() < b.max_domain && rng.gen_bool(0.5) {
        domain.push(domain.iter().max().map_or(0, |m| m + 1));
    }
    let mut interp = w.interpretation().clone();
    for (f, n) in b.signature.functions() {
        let table = interp.functions.entry(f.clone()).or_default();
        for args in all_tuples(&domain, *n) {
            table.entry(args).or_insert_with(|| *domain.choose(rng).unwrap());
        }
    }
    let grow = |rng: &mut dyn rand::RngCore, s: NodeSet| {
        let extra: NodeSet = (0..frame.len()).filter(|_| rng.gen_ratio(1, 4)).collect();
        up_close(&frame, s.union(extra))
    };
    let mut e: BTreeMap<ElemId, NodeSet> = BTreeMap::new();
    for &d in &domain {
        let before = w.existence(d);
        e.insert(d, grow(rng, before).union(leaves));
    }
    for k in 0..frame.len() {
        let at_k = domain.iter().copied().filter(|d| e[d].contains(k)).collect::<Vec<_>>();
        for d in interp.preimage_closure(at_k) {
            e.get_mut(&d).unwrap().insert(k);
        }
    }
    let mut ext: Extensions = BTreeMap::new();
    ext.insert(EXISTENCE.into(), e.iter().map(|(d, s)| (alloc::vec![*d], *s)).collect());
    for (p, n) in b.signature.predicates() {
        if p == EXISTENCE {
            continue;
        }
        let mut table = BTreeMap::new();
        for t in all_tuples(&domain, *n) {
            let region = interp.preimage_closure(t.iter().copied()).into_iter().fold(all, |acc, d| acc.intersect(e[&d]));
            let before = up_close(&frame, w.extension(p, &t));
            let mut s = if rng.gen_ratio(1, 3) { grow(rng, before).intersect(region) } else { before };
            s = up_close(&frame, s).intersect(region);
            if !s.is_empty() {
                s = up_close(&frame, s.union(leaves.intersect(region)));
            }
            table.insert(t, s);
        }
        ext.insert(p.clone(), table);
    }
    StrictFinModel::new(b.signature.clone(), frame, domain, interp, ext).expect("extension keeps the model invariants")
}
