use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::kripke::{Frame, FrameError, StrictFinModel};
use crate::syntax::ElemId;

/// A violated generation-structure condition, with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenViolation {
    Order(FrameError),
    Count { generations: usize, order: usize },
    NotPrevalent(String),
    SignatureMismatch(String),
    MissingNode { lower: String, upper: String, node: String },
    NodeOrder { lower: String, upper: String, below: String, above: String },
    MissingElement { lower: String, upper: String, element: ElemId },
    Constant { lower: String, upper: String, constant: String },
    Function { lower: String, upper: String, function: String, args: Vec<ElemId> },
    Extension { lower: String, upper: String, node: String, predicate: String, tuple: Vec<ElemId> },
    TooManyNodes(usize),
}

impl fmt::Display for GenViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GenViolation::*;
        match self {
            Order(e) => write!(f, "generation order: {e:?}"),
            Count { generations, order } => write!(f, "{generations} generations but {order} order entries"),
            NotPrevalent(w) => write!(f, "generation {w} is not prevalent"),
            SignatureMismatch(w) => write!(f, "generation {w} has a different signature"),
            MissingNode { lower, upper, node } => write!(f, "(i) node {node} of {lower} missing from {upper}"),
            NodeOrder { lower, upper, below, above } => {
                write!(f, "(ii) {lower} and {upper} disagree on {below} <= {above}")
            }
            MissingElement { lower, upper, element } => write!(f, "(iii) element @{element} of {lower} missing from {upper}"),
            Constant { lower, upper, constant } => write!(f, "(iv) {lower} and {upper} disagree on constant {constant}"),
            Function { lower, upper, function, args } => {
                write!(f, "(iv) {lower} and {upper} disagree on {function}{}", crate::kripke::fmt_tuple(args))
            }
            Extension { lower, upper, node, predicate, tuple } => write!(
                f,
                "(v) {predicate}{} holds at {node} in {lower} but not in {upper}",
                crate::kripke::fmt_tuple(tuple)
            ),
            TooManyNodes(n) => write!(f, "{n} nodes-in-generation exceed the limit of {}", crate::nodeset::MAX_NODES),
        }
    }
}

/// A node `k` of generation `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeInGeneration {
    pub generation: usize,
    pub node: usize,
}

/// Finite prevalent models ordered as a rooted tree of generations.
///
/// Nodes are identified across generations by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationStructure {
    order: Frame,
    generations: Vec<StrictFinModel>,
    offsets: Vec<usize>,
}

impl GenerationStructure {
    /// Validates the generation order on every comparable pair.
    /// `order` names the generations; generation `i` is `generations[i]`.
    pub fn new(order: Frame, generations: Vec<StrictFinModel>) -> Result<GenerationStructure, Vec<GenViolation>> {
        let mut errs = Vec::new();
        if order.len() != generations.len() {
            return Err(alloc::vec![GenViolation::Count { generations: generations.len(), order: order.len() }]);
        }
        let sig = generations[order.root()].signature().clone();
        for (i, w) in generations.iter().enumerate() {
            let name = order.name(i).to_string();
            if !w.is_prevalent() {
                errs.push(GenViolation::NotPrevalent(name.clone()));
            }
            if *w.signature() != sig {
                errs.push(GenViolation::SignatureMismatch(name));
            }
        }
        for a in 0..order.len() {
            for b in order.up(a).iter() {
                if a != b {
                    check_pair(order.name(a), &generations[a], order.name(b), &generations[b], &mut errs);
                }
            }
        }
        let mut offsets = Vec::with_capacity(generations.len());
        let mut total = 0;
        for w in &generations {
            offsets.push(total);
            total += w.frame().len();
        }
        if total > crate::nodeset::MAX_NODES {
            errs.push(GenViolation::TooManyNodes(total));
        }
        if errs.is_empty() {
            Ok(GenerationStructure { order, generations, offsets })
        } else {
            Err(errs)
        }
    }

    /// A single generation.
    pub fn single(name: &str, w: StrictFinModel) -> Result<GenerationStructure, Vec<GenViolation>> {
        let order = Frame::from_named(&[(name.to_string(), None)]).map_err(|e| alloc::vec![GenViolation::Order(e)])?;
        GenerationStructure::new(order, alloc::vec![w])
    }

    /// A chain of generations, earliest first.
    pub fn chain(named: Vec<(String, StrictFinModel)>) -> Result<GenerationStructure, Vec<GenViolation>> {
        let nodes: Vec<(String, Option<String>)> =
            named.iter().enumerate().map(|(i, (n, _))| (n.clone(), if i == 0 { None } else { Some(named[i - 1].0.clone()) })).collect();
        let order = Frame::from_named(&nodes).map_err(|e| alloc::vec![GenViolation::Order(e)])?;
        GenerationStructure::new(order, named.into_iter().map(|(_, w)| w).collect())
    }

    pub fn order(&self) -> &Frame {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.generations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generations.is_empty()
    }

    pub fn generation(&self, i: usize) -> &StrictFinModel {
        &self.generations[i]
    }

    pub fn generations(&self) -> &[StrictFinModel] {
        &self.generations
    }

    pub fn name(&self, i: usize) -> &str {
        self.order.name(i)
    }

    /// Index of the root generation.
    pub fn root(&self) -> usize {
        self.order.root()
    }

    /// Height of the generation order.
    pub fn height(&self) -> usize {
        self.order.height()
    }

    /// The root node of the root generation.
    pub fn root_node(&self) -> NodeInGeneration {
        let g = self.root();
        NodeInGeneration { generation: g, node: self.generations[g].frame().root() }
    }

    /// Every node-in-generation.
    pub fn nodes(&self) -> Vec<NodeInGeneration> {
        (0..self.len()).flat_map(|g| (0..self.generations[g].frame().len()).map(move |k| NodeInGeneration { generation: g, node: k })).collect()
    }

    /// Resolves a generation name and node name.
    pub fn locate(&self, generation: &str, node: &str) -> Option<NodeInGeneration> {
        let g = self.order.index_of(generation)?;
        let k = self.generations[g].frame().index_of(node)?;
        Some(NodeInGeneration { generation: g, node: k })
    }

    pub(crate) fn flat(&self, n: NodeInGeneration) -> usize {
        self.offsets[n.generation] + n.node
    }

    pub(crate) fn offset(&self, g: usize) -> usize {
        self.offsets[g]
    }

    /// Every domain element of some generation.
    pub fn elements(&self) -> BTreeSet<ElemId> {
        self.generations.iter().flat_map(|w| w.domain().iter().copied()).collect()
    }
}

fn check_pair(ln: &str, lo: &StrictFinModel, un: &str, up: &StrictFinModel, errs: &mut Vec<GenViolation>) {
    let (lower, upper) = (ln.to_string(), un.to_string());
    let lf = lo.frame();
    let uf = up.frame();
    let mut node_map = Vec::with_capacity(lf.len());
    for k in 0..lf.len() {
        match uf.index_of(lf.name(k)) {
            Some(j) => node_map.push(j),
            None => {
                errs.push(GenViolation::MissingNode { lower: lower.clone(), upper: upper.clone(), node: lf.name(k).to_string() });
                return;
            }
        }
    }
    for a in 0..lf.len() {
        for b in 0..lf.len() {
            if lf.leq(a, b) != uf.leq(node_map[a], node_map[b]) {
                errs.push(GenViolation::NodeOrder {
                    lower: lower.clone(),
                    upper: upper.clone(),
                    below: lf.name(a).to_string(),
                    above: lf.name(b).to_string(),
                });
            }
        }
    }
    for &d in lo.domain() {
        if !up.in_domain(d) {
            errs.push(GenViolation::MissingElement { lower: lower.clone(), upper: upper.clone(), element: d });
        }
    }
    let (li, ui) = (lo.interpretation(), up.interpretation());
    for (c, v) in &li.constants {
        if ui.constants.get(c) != Some(v) {
            errs.push(GenViolation::Constant { lower: lower.clone(), upper: upper.clone(), constant: c.clone() });
        }
    }
    for (f, table) in &li.functions {
        for (args, v) in table {
            if ui.apply(f, args) != Some(*v) {
                errs.push(GenViolation::Function { lower: lower.clone(), upper: upper.clone(), function: f.clone(), args: args.clone() });
            }
        }
    }
    for (p, table) in lo.extensions() {
        for (tuple, nodes) in table {
            let above = up.extension(p, tuple);
            for k in nodes.iter() {
                if !above.contains(node_map[k]) {
                    errs.push(GenViolation::Extension {
                        lower: lower.clone(),
                        upper: upper.clone(),
                        node: lf.name(k).to_string(),
                        predicate: p.clone(),
                        tuple: tuple.clone(),
                    });
                }
            }
        }
    }
}
