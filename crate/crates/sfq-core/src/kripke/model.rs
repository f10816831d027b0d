use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::frame::{Frame, FrameError};
use crate::nodeset::NodeSet;
use crate::syntax::{ElemId, Signature, Term, EXISTENCE};

/// Denotations of constants and function symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    pub constants: BTreeMap<String, ElemId>,
    pub functions: BTreeMap<String, BTreeMap<Vec<ElemId>, ElemId>>,
}

impl Interpretation {
    pub fn apply(&self, f: &str, args: &[ElemId]) -> Option<ElemId> {
        self.functions.get(f)?.get(args).copied()
    }

    /// Denotation of `t`, resolving variables through `env`.
    pub fn denote_with(&self, t: &Term, env: &dyn Fn(&str) -> Option<ElemId>) -> Option<ElemId> {
        match t {
            Term::Var(x) => env(x),
            Term::Const(c) => self.constants.get(c).copied(),
            Term::Name(d) => Some(*d),
            Term::App(f, args) => {
                let vals = args.iter().map(|a| self.denote_with(a, env)).collect::<Option<Vec<_>>>()?;
                self.apply(f, &vals)
            }
        }
    }

    /// Denotation of a closed term.
    pub fn denote(&self, t: &Term) -> Option<ElemId> {
        self.denote_with(t, &|_| None)
    }

    /// Least set containing `seeds` and closed under taking the arguments
    /// of any function application whose value is already in the set.
    pub fn preimage_closure(&self, seeds: impl IntoIterator<Item = ElemId>) -> BTreeSet<ElemId> {
        let mut out: BTreeSet<ElemId> = seeds.into_iter().collect();
        loop {
            let mut grew = false;
            for table in self.functions.values() {
                for (args, v) in table {
                    if out.contains(v) {
                        for a in args {
                            grew |= out.insert(*a);
                        }
                    }
                }
            }
            if !grew {
                return out;
            }
        }
    }

    /// Denotations of base-language closed terms of depth at most `depth`.
    pub fn base_denotations(&self, depth: usize) -> BTreeSet<ElemId> {
        let mut level: BTreeSet<ElemId> = self.constants.values().copied().collect();
        for _ in 0..depth {
            let next = self.apply_all(&level);
            if next == level {
                break;
            }
            level = next;
        }
        level
    }

    /// Denotations of all base-language closed terms.
    pub fn base_denotations_fixpoint(&self) -> BTreeSet<ElemId> {
        let mut level: BTreeSet<ElemId> = self.constants.values().copied().collect();
        loop {
            let next = self.apply_all(&level);
            if next == level {
                return level;
            }
            level = next;
        }
    }

    fn apply_all(&self, level: &BTreeSet<ElemId>) -> BTreeSet<ElemId> {
        let mut next = level.clone();
        for table in self.functions.values() {
            for (args, v) in table {
                if args.iter().all(|a| level.contains(a)) {
                    next.insert(*v);
                }
            }
        }
        next
    }

    /// Renames domain elements.
    pub fn map_elements(&self, f: &dyn Fn(ElemId) -> ElemId) -> Interpretation {
        Interpretation {
            constants: self.constants.iter().map(|(c, d)| (c.clone(), f(*d))).collect(),
            functions: self
                .functions
                .iter()
                .map(|(g, t)| (g.clone(), t.iter().map(|(a, v)| (a.iter().map(|x| f(*x)).collect(), f(*v))).collect()))
                .collect(),
        }
    }
}

/// A violated model invariant, with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelViolation {
    Frame(FrameError),
    EmptyDomain,
    DuplicateElement(ElemId),
    UnknownNode(String),
    UnknownPredicate(String),
    UnknownConstant(String),
    UnknownFunction(String),
    MissingConstant(String),
    MissingFunctionValue { function: String, args: Vec<ElemId> },
    ValueOutsideDomain { symbol: String, value: ElemId },
    Arity { predicate: String, tuple: Vec<ElemId> },
    ElementOutsideDomain { node: String, predicate: String, tuple: Vec<ElemId> },
    Persistence { lower: String, upper: String, predicate: String, tuple: Vec<ElemId> },
    Strictness { node: String, predicate: String, tuple: Vec<ElemId>, missing: ElemId },
    DomainNotMonotone { lower: String, upper: String, element: ElemId },
    EmptyNodeDomain(String),
    FunctionNotClosed { node: String, function: String, args: Vec<ElemId> },
}

pub(crate) fn fmt_tuple(t: &[ElemId]) -> String {
    let parts: Vec<String> = t.iter().map(|d| alloc::format!("@{d}")).collect();
    alloc::format!("<{}>", parts.join(","))
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModelViolation::*;
        match self {
            Frame(e) => write!(f, "not a tree: {e}"),
            EmptyDomain => f.write_str("empty domain"),
            DuplicateElement(d) => write!(f, "element @{d} listed twice"),
            UnknownNode(k) => write!(f, "unknown node `{k}`"),
            UnknownPredicate(p) => write!(f, "predicate `{p}` is not in the signature"),
            UnknownConstant(c) => write!(f, "constant `{c}` is not in the signature"),
            UnknownFunction(g) => write!(f, "function `{g}` is not in the signature"),
            MissingConstant(c) => write!(f, "interpretation not total: constant `{c}` has no value"),
            MissingFunctionValue { function, args } => {
                write!(f, "interpretation not total: `{function}` undefined on {}", fmt_tuple(args))
            }
            ValueOutsideDomain { symbol, value } => write!(f, "`{symbol}` takes value @{value} outside the domain"),
            Arity { predicate, tuple } => write!(f, "tuple {} has the wrong arity for `{predicate}`", fmt_tuple(tuple)),
            ElementOutsideDomain { node, predicate, tuple } => {
                write!(f, "tuple {} of `{predicate}` at `{node}` leaves the domain", fmt_tuple(tuple))
            }
            Persistence { lower, upper, predicate, tuple } => write!(
                f,
                "persistence violated: {} in `{predicate}` at `{lower}` but not at `{upper}`",
                fmt_tuple(tuple)
            ),
            Strictness { node, predicate, tuple, missing } => write!(
                f,
                "strictness violated: {} in `{predicate}` at `{node}` but @{missing} not in E there",
                fmt_tuple(tuple)
            ),
            DomainNotMonotone { lower, upper, element } => {
                write!(f, "domain not monotone: @{element} in D(`{lower}`) but not in D(`{upper}`)")
            }
            EmptyNodeDomain(k) => write!(f, "empty domain at `{k}`"),
            FunctionNotClosed { node, function, args } => {
                write!(f, "`{function}` on {} leaves or is undefined on D(`{node}`)", fmt_tuple(args))
            }
        }
    }
}

/// Per-predicate extension tables: tuple to the set of nodes where the
/// tuple is in the extension. Absent entries are empty.
pub type Extensions = BTreeMap<String, BTreeMap<Vec<ElemId>, NodeSet>>;

/// A finite strict finitistic model: a rooted tree with a constant domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictFinModel {
    signature: Signature,
    frame: Frame,
    domain: Vec<ElemId>,
    interp: Interpretation,
    ext: Extensions,
}

pub(crate) fn all_tuples(domain: &[ElemId], n: usize) -> Vec<Vec<ElemId>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * domain.len());
        for t in &out {
            for d in domain {
                let mut u = t.clone();
                u.push(*d);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn check_signature_interp(
    sig: &Signature,
    interp: &Interpretation,
    out: &mut Vec<ModelViolation>,
) {
    for c in sig.constants() {
        if !interp.constants.contains_key(c) {
            out.push(ModelViolation::MissingConstant(c.clone()));
        }
    }
    for c in interp.constants.keys() {
        if !sig.is_constant(c) {
            out.push(ModelViolation::UnknownConstant(c.clone()));
        }
    }
    for g in interp.functions.keys() {
        if sig.function_arity(g).is_none() {
            out.push(ModelViolation::UnknownFunction(g.clone()));
        }
    }
}

impl StrictFinModel {
    /// Validates and builds a model; reports every violated invariant.
    pub fn new(
        signature: Signature,
        frame: Frame,
        domain: Vec<ElemId>,
        interp: Interpretation,
        ext: Extensions,
    ) -> Result<StrictFinModel, Vec<ModelViolation>> {
        let mut errs = Vec::new();
        let mut dom = domain.clone();
        dom.sort_unstable();
        for w in dom.windows(2) {
            if w[0] == w[1] {
                errs.push(ModelViolation::DuplicateElement(w[0]));
            }
        }
        dom.dedup();
        if dom.is_empty() {
            errs.push(ModelViolation::EmptyDomain);
        }
        let in_dom = |d: &ElemId| dom.binary_search(d).is_ok();
        check_signature_interp(&signature, &interp, &mut errs);
        for (c, d) in &interp.constants {
            if !in_dom(d) {
                errs.push(ModelViolation::ValueOutsideDomain { symbol: c.clone(), value: *d });
            }
        }
        for (g, n) in signature.functions() {
            let table = interp.functions.get(g);
            for args in all_tuples(&dom, *n) {
                match table.and_then(|t| t.get(&args)) {
                    None => errs.push(ModelViolation::MissingFunctionValue { function: g.clone(), args }),
                    Some(v) if !in_dom(v) => errs.push(ModelViolation::ValueOutsideDomain { symbol: g.clone(), value: *v }),
                    Some(_) => {}
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
                if !tuple.iter().all(in_dom) {
                    let k = nodes.first().unwrap_or(0);
                    errs.push(ModelViolation::ElementOutsideDomain {
                        node: frame.name(k).to_string(),
                        predicate: p.clone(),
                        tuple: tuple.clone(),
                    });
                    continue;
                }
                if !nodes.is_subset(frame.all()) {
                    errs.push(ModelViolation::UnknownNode(alloc::format!("#{}", nodes.minus(frame.all()).first().unwrap_or(0))));
                    continue;
                }
                for k in nodes.iter() {
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
        let existence = |d: ElemId| -> NodeSet {
            clean.get(EXISTENCE).and_then(|t| t.get(&alloc::vec![d])).copied().unwrap_or(NodeSet::EMPTY)
        };
        for (p, table) in &clean {
            for (tuple, nodes) in table {
                let needed = interp.preimage_closure(tuple.iter().copied());
                for k in nodes.iter() {
                    if let Some(&m) = needed.iter().find(|&&d| !existence(d).contains(k)) {
                        errs.push(ModelViolation::Strictness {
                            node: frame.name(k).to_string(),
                            predicate: p.clone(),
                            tuple: tuple.clone(),
                            missing: m,
                        });
                    }
                }
            }
        }
        if errs.is_empty() {
            Ok(StrictFinModel { signature, frame, domain: dom, interp, ext: clean })
        } else {
            Err(errs)
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn domain(&self) -> &[ElemId] {
        &self.domain
    }

    pub fn interpretation(&self) -> &Interpretation {
        &self.interp
    }

    pub fn extensions(&self) -> &Extensions {
        &self.ext
    }

    pub fn in_domain(&self, d: ElemId) -> bool {
        self.domain.binary_search(&d).is_ok()
    }

    /// Nodes at which `tuple` is in the extension of `p`.
    pub fn extension(&self, p: &str, tuple: &[ElemId]) -> NodeSet {
        self.ext.get(p).and_then(|t| t.get(tuple)).copied().unwrap_or(NodeSet::EMPTY)
    }

    /// Nodes at which `d` is in the extension of `E`.
    pub fn existence(&self, d: ElemId) -> NodeSet {
        self.extension(EXISTENCE, &[d])
    }

    /// `P^{v(k)}`.
    pub fn ext_at(&self, k: usize, p: &str) -> BTreeSet<Vec<ElemId>> {
        match self.ext.get(p) {
            None => BTreeSet::new(),
            Some(t) => t.iter().filter(|(_, s)| s.contains(k)).map(|(u, _)| u.clone()).collect(),
        }
    }

    /// Every `(predicate, tuple)` pair over the signature and domain.
    pub fn atoms(&self) -> Vec<(String, Vec<ElemId>)> {
        let mut out = Vec::new();
        for (p, n) in self.signature.predicates() {
            for t in all_tuples(&self.domain, *n) {
                out.push((p.clone(), t));
            }
        }
        out
    }

    pub fn is_two_node(&self) -> bool {
        self.frame.len() == 2
    }

    /// Number of predicates with a nonempty extension at each node.
    pub fn verified_predicate_counts(&self) -> Vec<usize> {
        (0..self.frame.len())
            .map(|k| self.ext.values().filter(|t| t.values().any(|s| s.contains(k))).count())
            .collect()
    }

    /// Node-name form of the model.
    pub fn to_raw(&self) -> RawModel {
        let nodes = (0..self.frame.len())
            .map(|k| (self.frame.name(k).to_string(), self.frame.parent(k).map(|p| self.frame.name(p).to_string())))
            .collect();
        let mut extensions: BTreeMap<String, BTreeMap<String, BTreeSet<Vec<ElemId>>>> = BTreeMap::new();
        for k in 0..self.frame.len() {
            let mut here = BTreeMap::new();
            for p in self.ext.keys() {
                let e = self.ext_at(k, p);
                if !e.is_empty() {
                    here.insert(p.clone(), e);
                }
            }
            extensions.insert(self.frame.name(k).to_string(), here);
        }
        RawModel {
            signature: self.signature.clone(),
            nodes,
            domain: self.domain.clone(),
            interpretation: self.interp.clone(),
            extensions,
        }
    }
}

/// A model given by node names and per-node extension lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawModel {
    pub signature: Signature,
    /// `(node, parent)` pairs.
    pub nodes: Vec<(String, Option<String>)>,
    pub domain: Vec<ElemId>,
    pub interpretation: Interpretation,
    /// node to predicate to tuples; omitted entries are empty.
    pub extensions: BTreeMap<String, BTreeMap<String, BTreeSet<Vec<ElemId>>>>,
}

impl RawModel {
    /// Checks every invariant and builds the model.
    pub fn validate(&self) -> Result<StrictFinModel, Vec<ModelViolation>> {
        let frame = Frame::from_named(&self.nodes).map_err(|e| alloc::vec![ModelViolation::Frame(e)])?;
        let (ext, mut errs) = node_sets(&frame, &self.extensions);
        match StrictFinModel::new(self.signature.clone(), frame, self.domain.clone(), self.interpretation.clone(), ext) {
            Ok(m) if errs.is_empty() => Ok(m),
            Ok(_) => Err(errs),
            Err(mut more) => {
                errs.append(&mut more);
                Err(errs)
            }
        }
    }
}

pub(crate) fn node_sets(
    frame: &Frame,
    extensions: &BTreeMap<String, BTreeMap<String, BTreeSet<Vec<ElemId>>>>,
) -> (Extensions, Vec<ModelViolation>) {
    let mut errs = Vec::new();
    let mut ext: Extensions = BTreeMap::new();
    for (node, preds) in extensions {
        let Some(k) = frame.index_of(node) else {
            errs.push(ModelViolation::UnknownNode(node.clone()));
            continue;
        };
        for (p, tuples) in preds {
            let table = ext.entry(p.clone()).or_default();
            for t in tuples {
                table.entry(t.clone()).or_insert(NodeSet::EMPTY).insert(k);
            }
        }
    }
    (ext, errs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w0_raw() -> RawModel {
        let sig = Signature::from_parts(&["c"], &[], &[]).unwrap();
        let mut ext = BTreeMap::new();
        ext.insert("r".to_string(), BTreeMap::new());
        let mut k = BTreeMap::new();
        k.insert("E".to_string(), [vec![0]].into_iter().collect());
        ext.insert("k".to_string(), k);
        RawModel {
            signature: sig,
            nodes: vec![("r".into(), None), ("k".into(), Some("r".into()))],
            domain: vec![0],
            interpretation: Interpretation { constants: [("c".to_string(), 0)].into_iter().collect(), functions: BTreeMap::new() },
            extensions: ext,
        }
    }

    #[test]
    fn w0_is_valid() {
        let m = w0_raw().validate().unwrap();
        assert_eq!(m.existence(0), NodeSet::singleton(1));
        assert_eq!(m.to_raw().validate().unwrap(), m);
    }

    #[test]
    fn persistence_violation() {
        let mut raw = w0_raw();
        raw.extensions.get_mut("k").unwrap().clear();
        raw.extensions.get_mut("r").unwrap().insert("E".into(), [vec![0]].into_iter().collect());
        let errs = raw.validate().unwrap_err();
        assert_eq!(
            errs,
            vec![ModelViolation::Persistence { lower: "r".into(), upper: "k".into(), predicate: "E".into(), tuple: vec![0] }]
        );
    }

    #[test]
    fn strictness_violation() {
        let mut raw = w0_raw();
        raw.signature = Signature::from_parts(&["c"], &[], &[("P", 1)]).unwrap();
        raw.extensions.get_mut("k").unwrap().clear();
        raw.extensions.get_mut("k").unwrap().insert("P".into(), [vec![0]].into_iter().collect());
        let errs = raw.validate().unwrap_err();
        assert_eq!(
            errs,
            vec![ModelViolation::Strictness { node: "k".into(), predicate: "P".into(), tuple: vec![0], missing: 0 }]
        );
    }

    #[test]
    fn strictness_follows_function_preimages() {
        let sig = Signature::from_parts(&[], &[("f", 1)], &[("P", 1)]).unwrap();
        let interp = Interpretation {
            constants: BTreeMap::new(),
            functions: [("f".to_string(), [(vec![0], 1), (vec![1], 1)].into_iter().collect())].into_iter().collect(),
        };
        let frame = Frame::chain(1);
        let mut ext: Extensions = BTreeMap::new();
        ext.entry("P".into()).or_default().insert(vec![1], NodeSet::singleton(0));
        ext.entry("E".into()).or_default().insert(vec![1], NodeSet::singleton(0));
        let errs = StrictFinModel::new(sig.clone(), frame.clone(), vec![0, 1], interp.clone(), ext.clone()).unwrap_err();
        assert!(matches!(errs[0], ModelViolation::Strictness { missing: 0, .. }));
        ext.entry("E".into()).or_default().insert(vec![0], NodeSet::singleton(0));
        assert!(StrictFinModel::new(sig, frame, vec![0, 1], interp, ext).is_ok());
    }

    #[test]
    fn totality_and_domain() {
        let mut raw = w0_raw();
        raw.interpretation.constants.clear();
        raw.domain.clear();
        let errs = raw.validate().unwrap_err();
        assert!(errs.contains(&ModelViolation::EmptyDomain));
        assert!(errs.contains(&ModelViolation::MissingConstant("c".into())));
        let mut raw = w0_raw();
        raw.nodes.push(("x".into(), None));
        assert!(matches!(raw.validate().unwrap_err()[0], ModelViolation::Frame(FrameError::MultipleRoots(_))));
    }

    #[test]
    fn base_denotations_bounded() {
        let interp = Interpretation {
            constants: [("c".to_string(), 0)].into_iter().collect(),
            functions: [("f".to_string(), [(vec![0], 1), (vec![1], 2), (vec![2], 2)].into_iter().collect())]
                .into_iter()
                .collect(),
        };
        assert_eq!(interp.base_denotations(0), [0].into_iter().collect());
        assert_eq!(interp.base_denotations(1), [0, 1].into_iter().collect());
        assert_eq!(interp.base_denotations(3), interp.base_denotations_fixpoint());
    }
}
