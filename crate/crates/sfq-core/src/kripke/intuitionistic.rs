use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::frame::Frame;
use super::model::{all_tuples, check_signature_interp, node_sets, Extensions, Interpretation, ModelViolation};
use crate::nodeset::NodeSet;
use crate::syntax::{ElemId, Signature};

/// A finite tree-ordered intuitionistic model with growing domains.
///
/// Function tables are partial on the union of the node domains but total
/// on each `D(k)` and closed there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntuitionisticModel {
    signature: Signature,
    frame: Frame,
    domains: Vec<BTreeSet<ElemId>>,
    elements: Vec<ElemId>,
    interp: Interpretation,
    ext: Extensions,
}

impl IntuitionisticModel {
    pub fn new(
        signature: Signature,
        frame: Frame,
        domains: Vec<BTreeSet<ElemId>>,
        interp: Interpretation,
        ext: Extensions,
    ) -> Result<IntuitionisticModel, Vec<ModelViolation>> {
        let mut errs = Vec::new();
        assert_eq!(domains.len(), frame.len(), "one domain per node");
        check_signature_interp(&signature, &interp, &mut errs);
        for k in 0..frame.len() {
            if domains[k].is_empty() {
                errs.push(ModelViolation::EmptyNodeDomain(frame.name(k).to_string()));
            }
            if let Some(p) = frame.parent(k) {
                if let Some(d) = domains[p].iter().find(|d| !domains[k].contains(d)) {
                    errs.push(ModelViolation::DomainNotMonotone {
                        lower: frame.name(p).to_string(),
                        upper: frame.name(k).to_string(),
                        element: *d,
                    });
                }
            }
        }
        let root_dom = &domains[frame.root()];
        for (c, d) in &interp.constants {
            if !root_dom.contains(d) {
                errs.push(ModelViolation::ValueOutsideDomain { symbol: c.clone(), value: *d });
            }
        }
        for (g, n) in signature.functions() {
            for (k, dom) in domains.iter().enumerate() {
                let dk: Vec<ElemId> = dom.iter().copied().collect();
                for args in all_tuples(&dk, *n) {
                    match interp.apply(g, &args) {
                        Some(v) if dom.contains(&v) => {}
                        _ => errs.push(ModelViolation::FunctionNotClosed {
                            node: frame.name(k).to_string(),
                            function: g.clone(),
                            args,
                        }),
                    }
                }
            }
        }
        let mut clean: Extensions = BTreeMap::new();
        for (p, table) in &ext {
            let Some(arity) = signature.predicate_arity(p) else {
                errs.push(ModelViolation::UnknownPredicate(p.clone()));
                continue;
            };
            for (tuple, nodes) in table {
                if nodes.is_empty() {
                    continue;
                }
                if tuple.len() != arity {
                    errs.push(ModelViolation::Arity { predicate: p.clone(), tuple: tuple.clone() });
                    continue;
                }
                for k in nodes.iter() {
                    if !tuple.iter().all(|d| domains[k].contains(d)) {
                        errs.push(ModelViolation::ElementOutsideDomain {
                            node: frame.name(k).to_string(),
                            predicate: p.clone(),
                            tuple: tuple.clone(),
                        });
                    }
                    for &c in frame.children(k) {
                        if !nodes.contains(c) {
                            errs.push(ModelViolation::Persistence {
                                lower: frame.name(k).to_string(),
                                upper: frame.name(c).to_string(),
                                predicate: p.clone(),
                                tuple: tuple.clone(),
                            });
                        }
                    }
                }
                clean.entry(p.clone()).or_default().insert(tuple.clone(), *nodes);
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        let elements: BTreeSet<ElemId> = domains.iter().flatten().copied().collect();
        Ok(IntuitionisticModel { signature, frame, domains, elements: elements.into_iter().collect(), interp, ext: clean })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn domain_at(&self, k: usize) -> &BTreeSet<ElemId> {
        &self.domains[k]
    }

    /// Union of all node domains.
    pub fn elements(&self) -> &[ElemId] {
        &self.elements
    }

    /// Nodes whose domain contains `d`.
    pub fn domain_mask(&self, d: ElemId) -> NodeSet {
        (0..self.frame.len()).filter(|&k| self.domains[k].contains(&d)).collect()
    }

    pub fn interpretation(&self) -> &Interpretation {
        &self.interp
    }

    pub fn extensions(&self) -> &Extensions {
        &self.ext
    }

    pub fn extension(&self, p: &str, tuple: &[ElemId]) -> NodeSet {
        self.ext.get(p).and_then(|t| t.get(tuple)).copied().unwrap_or(NodeSet::EMPTY)
    }

    pub fn ext_at(&self, k: usize, p: &str) -> BTreeSet<Vec<ElemId>> {
        match self.ext.get(p) {
            None => BTreeSet::new(),
            Some(t) => t.iter().filter(|(_, s)| s.contains(k)).map(|(u, _)| u.clone()).collect(),
        }
    }

    pub fn to_raw(&self) -> RawIntuitionisticModel {
        let nodes = (0..self.frame.len())
            .map(|k| (self.frame.name(k).to_string(), self.frame.parent(k).map(|p| self.frame.name(p).to_string())))
            .collect();
        let mut extensions: BTreeMap<String, BTreeMap<String, BTreeSet<Vec<ElemId>>>> = BTreeMap::new();
        let mut domains = BTreeMap::new();
        for k in 0..self.frame.len() {
            let mut here = BTreeMap::new();
            for p in self.ext.keys() {
                let e = self.ext_at(k, p);
                if !e.is_empty() {
                    here.insert(p.clone(), e);
                }
            }
            extensions.insert(self.frame.name(k).to_string(), here);
            domains.insert(self.frame.name(k).to_string(), self.domains[k].iter().copied().collect());
        }
        RawIntuitionisticModel {
            signature: self.signature.clone(),
            nodes,
            domains,
            interpretation: self.interp.clone(),
            extensions,
        }
    }
}

/// Node-name form of an intuitionistic model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawIntuitionisticModel {
    pub signature: Signature,
    pub nodes: Vec<(String, Option<String>)>,
    pub domains: BTreeMap<String, Vec<ElemId>>,
    pub interpretation: Interpretation,
    pub extensions: BTreeMap<String, BTreeMap<String, BTreeSet<Vec<ElemId>>>>,
}

impl RawIntuitionisticModel {
    pub fn validate(&self) -> Result<IntuitionisticModel, Vec<ModelViolation>> {
        let frame = Frame::from_named(&self.nodes).map_err(|e| alloc::vec![ModelViolation::Frame(e)])?;
        let (ext, mut errs) = node_sets(&frame, &self.extensions);
        let mut domains = alloc::vec![BTreeSet::new(); frame.len()];
        for (node, ds) in &self.domains {
            match frame.index_of(node) {
                Some(k) => domains[k] = ds.iter().copied().collect(),
                None => errs.push(ModelViolation::UnknownNode(node.clone())),
            }
        }
        match IntuitionisticModel::new(self.signature.clone(), frame, domains, self.interpretation.clone(), ext) {
            Ok(m) if errs.is_empty() => Ok(m),
            Ok(_) => Err(errs),
            Err(mut more) => {
                errs.append(&mut more);
                Err(errs)
            }
        }
    }
}

/// A classical first-order structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalStructure {
    pub signature: Signature,
    pub domain: Vec<ElemId>,
    pub interpretation: Interpretation,
    pub extensions: BTreeMap<String, BTreeSet<Vec<ElemId>>>,
}

impl ClassicalStructure {
    pub fn holds(&self, p: &str, tuple: &[ElemId]) -> bool {
        self.extensions.get(p).is_some_and(|s| s.contains(tuple))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn growing_domains() {
        let sig = Signature::from_parts(&["c"], &[], &[("P", 1)]).unwrap();
        let frame = Frame::chain(2);
        let interp = Interpretation { constants: [("c".to_string(), 0)].into_iter().collect(), functions: BTreeMap::new() };
        let domains = vec![[0].into_iter().collect(), [0, 1].into_iter().collect()];
        let mut ext: Extensions = BTreeMap::new();
        ext.entry("P".into()).or_default().insert(vec![1], NodeSet::singleton(1));
        let m = IntuitionisticModel::new(sig.clone(), frame.clone(), domains, interp.clone(), ext.clone()).unwrap();
        assert_eq!(m.elements(), &[0, 1]);
        assert_eq!(m.domain_mask(1), NodeSet::singleton(1));
        assert_eq!(m.to_raw().validate().unwrap(), m);
        let bad = vec![[0].into_iter().collect(), [0].into_iter().collect()];
        let errs = IntuitionisticModel::new(sig.clone(), frame.clone(), bad, interp.clone(), ext).unwrap_err();
        assert!(matches!(errs[0], ModelViolation::ElementOutsideDomain { .. }));
        let shrink = vec![[0, 1].into_iter().collect(), [0].into_iter().collect()];
        let errs = IntuitionisticModel::new(sig, frame, shrink, interp, BTreeMap::new()).unwrap_err();
        assert!(matches!(errs[0], ModelViolation::DomainNotMonotone { element: 1, .. }));
    }
}
