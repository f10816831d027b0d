use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::TransformError;
use crate::generation::GenerationStructure;
use crate::kripke::{Extensions, Frame, Interpretation, IntuitionisticModel, StrictFinModel};
use crate::nodeset::NodeSet;
use crate::syntax::{ElemId, EXISTENCE};

/// The intuitionistic model whose nodes are the generations of `g`, with
/// `D(W) = D_W` and each extension the union of the extensions over the
/// nodes of `W`.
pub fn gen_to_int(g: &GenerationStructure) -> Result<IntuitionisticModel, TransformError> {
    let mut interp = Interpretation::default();
    for w in g.generations() {
        let wi = w.interpretation();
        for (c, d) in &wi.constants {
            interp.constants.entry(c.clone()).or_insert(*d);
        }
        for (f, table) in &wi.functions {
            let merged = interp.functions.entry(f.clone()).or_default();
            for (args, v) in table {
                match merged.get(args) {
                    Some(old) if old != v => {
                        return Err(TransformError::FunctionConflict { function: f.clone(), args: args.clone() });
                    }
                    Some(_) => {}
                    None => {
                        merged.insert(args.clone(), *v);
                    }
                }
            }
        }
    }
    let mut ext: Extensions = BTreeMap::new();
    for (i, w) in g.generations().iter().enumerate() {
        for (p, table) in w.extensions() {
            for (tuple, nodes) in table {
                if !nodes.is_empty() {
                    ext.entry(p.clone()).or_default().entry(tuple.clone()).or_insert(NodeSet::EMPTY).insert(i);
                }
            }
        }
    }
    let domains = g.generations().iter().map(|w| w.domain().iter().copied().collect()).collect();
    let sig = g.generation(g.root()).signature().clone();
    IntuitionisticModel::new(sig, g.order().clone(), domains, interp, ext).map_err(TransformError::Model)
}

/// The generation structure with one linear generation `W_U` per node `U`
/// of `i`: the nodes below `U`, domain `D(U)`, `E` at each node its
/// domain, and the other predicates carried over.
pub fn int_to_gen(i: &IntuitionisticModel) -> Result<GenerationStructure, TransformError> {
    let frame = i.frame();
    let mut models = Vec::with_capacity(frame.len());
    for u in 0..frame.len() {
        let below: Vec<usize> = frame.bfs().into_iter().filter(|&k| frame.leq(k, u)).collect();
        let named: Vec<(String, Option<String>)> = below
            .iter()
            .map(|&k| (frame.name(k).to_string(), frame.parent(k).filter(|_| k != frame.root()).map(|p| frame.name(p).to_string())))
            .collect();
        let chain = Frame::from_named(&named).expect("a path below a node is a tree");
        let local = |k: usize| chain.index_of(frame.name(k)).expect("node on the path");
        let dom: &BTreeSet<ElemId> = i.domain_at(u);
        let src = i.interpretation();
        let interp = Interpretation {
            constants: src.constants.clone(),
            functions: src
                .functions
                .iter()
                .map(|(f, t)| {
                    let kept = t.iter().filter(|(args, _)| args.iter().all(|a| dom.contains(a))).map(|(a, v)| (a.clone(), *v)).collect();
                    (f.clone(), kept)
                })
                .collect(),
        };
        let mut ext: Extensions = BTreeMap::new();
        for &k in &below {
            for &d in i.domain_at(k) {
                ext.entry(EXISTENCE.into()).or_default().entry(alloc::vec![d]).or_insert(NodeSet::EMPTY).insert(local(k));
            }
        }
        for (p, table) in i.extensions() {
            if p == EXISTENCE {
                continue;
            }
            for (tuple, nodes) in table {
                for &k in &below {
                    if nodes.contains(k) {
                        ext.entry(p.clone()).or_default().entry(tuple.clone()).or_insert(NodeSet::EMPTY).insert(local(k));
                    }
                }
            }
        }
        let w = StrictFinModel::new(i.signature().clone(), chain, dom.iter().copied().collect(), interp, ext)
            .map_err(TransformError::Model)?;
        models.push(w);
    }
    GenerationStructure::new(frame.clone(), models).map_err(TransformError::Generation)
}
