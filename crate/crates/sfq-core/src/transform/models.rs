use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;

use super::TransformError;
use crate::kripke::{ClassicalStructure, Extensions, Frame, StrictFinModel};
use crate::nodeset::NodeSet;
use crate::syntax::{Formula, EXISTENCE};

/// The two-node contraction of a prevalent model with respect to `a`:
/// the root keeps the root extensions of `E` and the predicates of `a`,
/// the leaf gets their union over all nodes, other predicates are empty.
pub fn contract(w: &StrictFinModel, a: &Formula) -> Result<StrictFinModel, TransformError> {
    if !w.is_prevalent() {
        return Err(TransformError::NotPrevalent);
    }
    let mut keep: BTreeSet<String> = a.predicates();
    keep.insert(EXISTENCE.into());
    let r = w.frame().root();
    let mut ext: Extensions = BTreeMap::new();
    for (p, table) in w.extensions() {
        if !keep.contains(p) {
            continue;
        }
        for (tuple, s) in table {
            let mut t = NodeSet::EMPTY;
            if s.contains(r) {
                t.insert(0);
            }
            if !s.is_empty() {
                t.insert(1);
            }
            ext.entry(p.clone()).or_default().insert(tuple.clone(), t);
        }
    }
    StrictFinModel::new(w.signature().clone(), Frame::two_node(), w.domain().to_vec(), w.interpretation().clone(), ext)
        .map_err(TransformError::Model)
}

/// The submodel on the nodes above `k`.
pub fn generated_submodel(w: &StrictFinModel, k: usize) -> StrictFinModel {
    let (frame, map) = w.frame().generated(k);
    let ext: Extensions = w
        .extensions()
        .iter()
        .map(|(p, table)| {
            let t = table.iter().map(|(tuple, s)| (tuple.clone(), s.iter().filter_map(|j| map[j]).collect())).collect();
            (p.clone(), t)
        })
        .collect();
    StrictFinModel::new(w.signature().clone(), frame, w.domain().to_vec(), w.interpretation().clone(), ext)
        .expect("generated submodels keep the model invariants")
}

fn two_node_leaf(w: &StrictFinModel) -> Result<usize, TransformError> {
    let f = w.frame();
    if f.len() != 2 {
        return Err(TransformError::NotTwoNode);
    }
    Ok(f.leaves().first().expect("a two-node tree has a leaf"))
}

/// Clears every extension at the root of a two-node model.
pub fn preconstruct(w: &StrictFinModel) -> Result<StrictFinModel, TransformError> {
    let leaf = NodeSet::singleton(two_node_leaf(w)?);
    let ext: Extensions = w
        .extensions()
        .iter()
        .map(|(p, table)| (p.clone(), table.iter().map(|(t, s)| (t.clone(), s.intersect(leaf))).collect()))
        .collect();
    StrictFinModel::new(w.signature().clone(), w.frame().clone(), w.domain().to_vec(), w.interpretation().clone(), ext)
        .map_err(TransformError::Model)
}

/// The classical structure read off the leaf of a two-node prevalent
/// model.
pub fn to_classical(w: &StrictFinModel) -> Result<ClassicalStructure, TransformError> {
    let leaf = two_node_leaf(w)?;
    if !w.is_prevalent() {
        return Err(TransformError::NotPrevalent);
    }
    let extensions = w.signature().predicates().iter().map(|(p, _)| (p.clone(), w.ext_at(leaf, p))).collect();
    Ok(ClassicalStructure {
        signature: w.signature().clone(),
        domain: w.domain().to_vec(),
        interpretation: w.interpretation().clone(),
        extensions,
    })
}
