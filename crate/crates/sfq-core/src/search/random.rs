//! Seeded random models under class constraints.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::{allowed_region, atom_candidates, e_candidates, SearchBounds};
use super::shapes::{random_frame, up_sets};
use crate::kripke::{all_tuples, Extensions, Interpretation, StrictFinModel};
use crate::nodeset::NodeSet;
use crate::syntax::{ElemId, EXISTENCE};

/// The generator used for every seeded construction.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A model of the bounded class, determined by `seed`.
///
/// Panics when `bounds` fails [`SearchBounds::validate`].
pub fn random_model(seed: u64, bounds: &SearchBounds) -> StrictFinModel {
    random_model_with(&mut rng_from_seed(seed), bounds)
}

/// As [`random_model`], drawing from a caller-supplied generator.
pub fn random_model_with(rng: &mut impl Rng, bounds: &SearchBounds) -> StrictFinModel {
    bounds.validate().expect("valid search bounds");
    let sig = &bounds.signature;
    let nodes = bounds.node_counts();
    let n = rng.gen_range(nodes);
    let frame = random_frame(rng, n);
    let m = rng.gen_range(1..=bounds.max_domain);
    let dom: Vec<ElemId> = (0..m as ElemId).collect();
    let mut interp = Interpretation::default();
    for c in sig.constants() {
        interp.constants.insert(c.clone(), rng.gen_range(0..m as ElemId));
    }
    for (f, k) in sig.functions() {
        let table = all_tuples(&dom, *k).into_iter().map(|a| (a, rng.gen_range(0..m as ElemId))).collect();
        interp.functions.insert(f.clone(), table);
    }
    let ups = up_sets(&frame);
    let cands = e_candidates(bounds.class, &frame, &ups, &interp, m, bounds.max_term_depth);
    let mut e: Vec<NodeSet> = cands.iter().map(|c| *c.choose(rng).expect("some E candidate")).collect();
    // close each node's E under function preimages
    for k in 0..frame.len() {
        let at_k = dom.iter().copied().filter(|&d| e[d as usize].contains(k));
        for d in interp.preimage_closure(at_k) {
            e[d as usize].insert(k);
        }
    }
    let all = frame.all();
    let mut ext: Extensions = BTreeMap::new();
    ext.insert(EXISTENCE.into(), dom.iter().map(|&d| (alloc::vec![d], e[d as usize])).collect());
    for (p, k) in sig.predicates() {
        if p == EXISTENCE {
            continue;
        }
        let mut table = BTreeMap::new();
        for t in all_tuples(&dom, *k) {
            let region = allowed_region(&interp, &e, all, &t);
            let c = atom_candidates(bounds.class, &frame, &ups, region);
            table.insert(t, *c.choose(rng).expect("the empty set is a candidate"));
        }
        ext.insert(p.clone(), table);
    }
    StrictFinModel::new(sig.clone(), frame, dom, interp, ext).expect("random models satisfy the model invariants")
}
