//! Bounded enumeration of models up to isomorphism.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::shapes::{shapes, up_sets};
use crate::kripke::{all_tuples, Extensions, Frame, Interpretation, StrictFinModel, DEFAULT_TERM_DEPTH};
use crate::nodeset::NodeSet;
use crate::syntax::{ElemId, Signature, EXISTENCE};

/// A class of models searched over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelClass {
    All,
    Prevalent,
    TwoNodePrevalent,
    PreconstructiveTwoNodePrevalent,
    /// Prevalent models whose root already has every base closed term.
    Postconstructive,
}

impl ModelClass {
    pub const ALL: [ModelClass; 5] = [
        ModelClass::All,
        ModelClass::Prevalent,
        ModelClass::TwoNodePrevalent,
        ModelClass::PreconstructiveTwoNodePrevalent,
        ModelClass::Postconstructive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelClass::All => "all",
            ModelClass::Prevalent => "prevalent",
            ModelClass::TwoNodePrevalent => "two-node-prevalent",
            ModelClass::PreconstructiveTwoNodePrevalent => "preconstructive-two-node-prevalent",
            ModelClass::Postconstructive => "postconstructive",
        }
    }

    pub fn from_name(s: &str) -> Option<ModelClass> {
        ModelClass::ALL.into_iter().find(|c| c.name() == s)
    }

    fn prevalent(self) -> bool {
        self != ModelClass::All
    }

    fn two_node(self) -> bool {
        matches!(self, ModelClass::TwoNodePrevalent | ModelClass::PreconstructiveTwoNodePrevalent)
    }

    /// Membership test, with postconstructiveness checked to `term_depth`.
    pub fn contains(self, m: &StrictFinModel, term_depth: usize) -> bool {
        match self {
            ModelClass::All => true,
            ModelClass::Prevalent => m.is_prevalent(),
            ModelClass::TwoNodePrevalent => m.frame().len() == 2 && m.is_prevalent(),
            ModelClass::PreconstructiveTwoNodePrevalent => m.frame().len() == 2 && m.is_prevalent() && m.is_preconstructive(),
            ModelClass::Postconstructive => m.is_prevalent() && m.is_postconstructive_to(term_depth),
        }
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Limits of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_nodes: usize,
    pub max_domain: usize,
    pub signature: Signature,
    pub max_term_depth: usize,
    pub class: ModelClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundsError {
    Zero(&'static str),
    TooManyNodes(usize),
    /// The two-node classes need room for two nodes.
    ClassNeedsTwoNodes(ModelClass),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::Zero(what) => write!(f, "{what} must be at least 1"),
            BoundsError::TooManyNodes(n) => write!(f, "{n} nodes exceeds the limit of {}", crate::nodeset::MAX_NODES),
            BoundsError::ClassNeedsTwoNodes(c) => write!(f, "class {c} needs max nodes at least 2"),
        }
    }
}

impl core::error::Error for BoundsError {}

impl SearchBounds {
    pub fn new(signature: Signature, max_nodes: usize, max_domain: usize, class: ModelClass) -> SearchBounds {
        SearchBounds { max_nodes, max_domain, signature, max_term_depth: DEFAULT_TERM_DEPTH, class }
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        if self.max_nodes == 0 {
            return Err(BoundsError::Zero("max nodes"));
        }
        if self.max_domain == 0 {
            return Err(BoundsError::Zero("max domain"));
        }
        if self.max_term_depth == 0 {
            return Err(BoundsError::Zero("max term depth"));
        }
        if self.max_nodes > crate::nodeset::MAX_NODES {
            return Err(BoundsError::TooManyNodes(self.max_nodes));
        }
        if self.class.two_node() && self.max_nodes < 2 {
            return Err(BoundsError::ClassNeedsTwoNodes(self.class));
        }
        Ok(())
    }

    /// Node counts searched, in ascending order.
    pub(crate) fn node_counts(&self) -> core::ops::RangeInclusive<usize> {
        if self.class.two_node() {
            2..=2
        } else {
            1..=self.max_nodes
        }
    }
}

/// Mixed-radix counter.
#[derive(Clone, Debug)]
struct Odometer {
    digits: Vec<usize>,
    radices: Vec<usize>,
    done: bool,
}

impl Odometer {
    fn new(radices: Vec<usize>) -> Odometer {
        let done = radices.contains(&0);
        Odometer { digits: alloc::vec![0; radices.len()], radices, done }
    }

    fn advance(&mut self) {
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                return;
            }
            self.digits[i] = 0;
        }
        self.done = true;
    }
}

/// Node permutations preserving the tree order.
pub(crate) fn automorphisms(frame: &Frame) -> Vec<Vec<usize>> {
    let n = frame.len();
    let codes: Vec<String> = (0..n).map(|k| subtree_code(frame, k)).collect();
    let mut out = Vec::new();
    let mut sigma = alloc::vec![usize::MAX; n];
    sigma[frame.root()] = frame.root();
    let order = frame.bfs();
    fn rec(frame: &Frame, codes: &[String], order: &[usize], i: usize, sigma: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == order.len() {
            out.push(sigma.clone());
            return;
        }
        let k = order[i];
        let src = frame.children(k);
        let dst = frame.children(sigma[k]).to_vec();
        let mut used = alloc::vec![false; dst.len()];
        assign(frame, codes, order, i, src, &dst, 0, &mut used, sigma, out);
    }
    #[allow(clippy::too_many_arguments)]
    fn assign(
        frame: &Frame,
        codes: &[String],
        order: &[usize],
        i: usize,
        src: &[usize],
        dst: &[usize],
        j: usize,
        used: &mut Vec<bool>,
        sigma: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if j == src.len() {
            rec(frame, codes, order, i + 1, sigma, out);
            return;
        }
        for t in 0..dst.len() {
            if !used[t] && codes[dst[t]] == codes[src[j]] {
                used[t] = true;
                sigma[src[j]] = dst[t];
                assign(frame, codes, order, i, src, dst, j + 1, used, sigma, out);
                used[t] = false;
            }
        }
    }
    rec(frame, &codes, &order, 0, &mut sigma, &mut out);
    out
}

fn subtree_code(frame: &Frame, k: usize) -> String {
    let mut parts: Vec<String> = frame.children(k).iter().map(|&c| subtree_code(frame, c)).collect();
    parts.sort();
    alloc::format!("({})", parts.concat())
}

fn permutations(m: usize) -> Vec<Vec<ElemId>> {
    let mut out = Vec::new();
    let mut cur: Vec<ElemId> = (0..m as ElemId).collect();
    fn rec(k: usize, cur: &mut Vec<ElemId>, out: &mut Vec<Vec<ElemId>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

fn map_set(s: NodeSet, sigma: &[usize]) -> NodeSet {
    s.iter().map(|k| sigma[k]).collect()
}

/// Per-task layout: atoms in a fixed order with their tuples.
struct Layout {
    /// `(predicate, tuple)` for every non-`E` atom.
    atoms: Vec<(String, Vec<ElemId>)>,
    /// Index of each tuple within its predicate, keyed by tuple.
    atom_index: BTreeMap<(String, Vec<ElemId>), usize>,
    /// Function argument tuples, per function in signature order.
    fn_args: Vec<(String, Vec<Vec<ElemId>>)>,
}

impl Layout {
    fn new(sig: &Signature, m: usize) -> Layout {
        let dom: Vec<ElemId> = (0..m as ElemId).collect();
        let mut atoms = Vec::new();
        for (p, n) in sig.predicates() {
            if p == EXISTENCE {
                continue;
            }
            for t in all_tuples(&dom, *n) {
                atoms.push((p.clone(), t));
            }
        }
        let atom_index = atoms.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let fn_args = sig.functions().iter().map(|(f, n)| (f.clone(), all_tuples(&dom, *n))).collect();
        Layout { atoms, atom_index, fn_args }
    }

    fn interp_radices(&self, sig: &Signature, m: usize) -> Vec<usize> {
        let mut r = alloc::vec![m; sig.constants().len()];
        for (_, args) in &self.fn_args {
            r.extend(core::iter::repeat_n(m, args.len()));
        }
        r
    }

    fn interpretation(&self, sig: &Signature, digits: &[usize]) -> Interpretation {
        let mut it = digits.iter();
        let mut interp = Interpretation::default();
        for c in sig.constants() {
            interp.constants.insert(c.clone(), *it.next().unwrap() as ElemId);
        }
        for (f, args) in &self.fn_args {
            let table = args.iter().map(|a| (a.clone(), *it.next().unwrap() as ElemId)).collect();
            interp.functions.insert(f.clone(), table);
        }
        interp
    }
}

/// Whether every node's `E` set is closed under function preimages.
pub(crate) fn e_closed(interp: &Interpretation, e: &[NodeSet]) -> bool {
    for table in interp.functions.values() {
        for (args, v) in table {
            let s = e[*v as usize];
            if args.iter().any(|a| !s.is_subset(e[*a as usize])) {
                return false;
            }
        }
    }
    true
}

/// Region where every element needed by `tuple` exists.
pub(crate) fn allowed_region(interp: &Interpretation, e: &[NodeSet], all: NodeSet, tuple: &[ElemId]) -> NodeSet {
    interp.preimage_closure(tuple.iter().copied()).into_iter().fold(all, |acc, d| acc.intersect(e[d as usize]))
}

/// Up-set candidates for `E` of each element under a class.
pub(crate) fn e_candidates(class: ModelClass, frame: &Frame, ups: &[NodeSet], interp: &Interpretation, m: usize, depth: usize) -> Vec<Vec<NodeSet>> {
    let all = frame.all();
    let root = frame.root();
    let base = if class == ModelClass::Postconstructive { interp.base_denotations(depth) } else { Default::default() };
    (0..m as ElemId)
        .map(|d| {
            ups.iter()
                .copied()
                .filter(|&s| {
                    (!class.prevalent() || frame.is_cofinal(s))
                        && (class != ModelClass::PreconstructiveTwoNodePrevalent || !s.contains(root))
                        && (!base.contains(&d) || s == all)
                })
                .collect()
        })
        .collect()
}

/// Up-set candidates for an atom confined to `region`.
pub(crate) fn atom_candidates(class: ModelClass, frame: &Frame, ups: &[NodeSet], region: NodeSet) -> Vec<NodeSet> {
    ups.iter()
        .copied()
        .filter(|&s| s.is_subset(region) && (!class.prevalent() || s.is_empty() || frame.is_cofinal(s)))
        .collect()
}

/// Index tables for one element permutation.
struct PermData {
    pi: Vec<ElemId>,
    inv: Vec<ElemId>,
    /// For each function and image argument tuple, the source tuple index.
    fn_src: Vec<Vec<usize>>,
    /// For each image atom, the source atom index.
    atom_src: Vec<usize>,
}

impl PermData {
    fn new(layout: &Layout, pi: Vec<ElemId>) -> PermData {
        let mut inv = alloc::vec![0 as ElemId; pi.len()];
        for (i, &v) in pi.iter().enumerate() {
            inv[v as usize] = i as ElemId;
        }
        let pre = |t: &[ElemId]| -> Vec<ElemId> { t.iter().map(|&x| inv[x as usize]).collect() };
        let fn_src = layout
            .fn_args
            .iter()
            .map(|(_, args)| args.iter().map(|a| args.iter().position(|b| *b == pre(a)).unwrap()).collect())
            .collect();
        let atom_src = layout.atoms.iter().map(|(p, t)| layout.atom_index[&(p.clone(), pre(t))]).collect();
        PermData { pi, inv, fn_src, atom_src }
    }
}

struct Task {
    frame: Frame,
    m: usize,
    ups: Vec<NodeSet>,
    layout: Layout,
    autos: Vec<Vec<usize>>,
    perms: Vec<PermData>,
    interp_odo: Odometer,
    interp: Interpretation,
    e_cands: Vec<Vec<NodeSet>>,
    e_odo: Odometer,
    e: Vec<NodeSet>,
    p_cands: Vec<Vec<NodeSet>>,
    p_odo: Odometer,
    started: bool,
}

/// Lazily enumerated models, one per isomorphism class, ascending by node
/// count. Bounds that fail [`SearchBounds::validate`] give an empty stream.
pub struct ModelStream {
    bounds: SearchBounds,
    tasks: Vec<(Frame, usize)>,
    next_task: usize,
    task: Option<Task>,
    emitted: u64,
}

/// Every model within `bounds` of the bounded class, up to isomorphism.
pub fn enumerate_models(bounds: &SearchBounds) -> ModelStream {
    let mut tasks = Vec::new();
    if bounds.validate().is_ok() {
        for n in bounds.node_counts() {
            for frame in shapes(n) {
                if bounds.class.two_node() && frame.len() != 2 {
                    continue;
                }
                for m in 1..=bounds.max_domain {
                    tasks.push((frame.clone(), m));
                }
            }
        }
    }
    ModelStream { bounds: bounds.clone(), tasks, next_task: 0, task: None, emitted: 0 }
}

impl ModelStream {
    /// Number of models yielded so far.
    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    fn open_task(&self, frame: Frame, m: usize) -> Task {
        let sig = &self.bounds.signature;
        let layout = Layout::new(sig, m);
        let interp_odo = Odometer::new(layout.interp_radices(sig, m));
        let ups = up_sets(&frame);
        let autos = automorphisms(&frame);
        Task {
            frame,
            m,
            ups,
            perms: permutations(m).into_iter().map(|pi| PermData::new(&layout, pi)).collect(),
            layout,
            autos,
            interp_odo,
            interp: Interpretation::default(),
            e_cands: Vec::new(),
            e_odo: Odometer::new(alloc::vec![0]),
            e: Vec::new(),
            p_cands: Vec::new(),
            p_odo: Odometer::new(alloc::vec![0]),
            started: false,
        }
    }
}

impl Task {
    /// Moves to the next raw assignment; false when exhausted.
    fn step(&mut self, class: ModelClass, sig: &Signature, depth: usize) -> bool {
        if self.started {
            self.p_odo.advance();
        }
        self.started = true;
        loop {
            if !self.p_odo.done {
                return true;
            }
            // next E choice
            loop {
                if self.e_odo.done {
                    // next interpretation
                    if self.interp_odo.done {
                        return false;
                    }
                    self.interp = self.layout.interpretation(sig, &self.interp_odo.digits);
                    self.interp_odo.advance();
                    self.e_cands = e_candidates(class, &self.frame, &self.ups, &self.interp, self.m, depth);
                    self.e_odo = Odometer::new(self.e_cands.iter().map(Vec::len).collect());
                    continue;
                }
                let e: Vec<NodeSet> = self.e_odo.digits.iter().zip(&self.e_cands).map(|(&i, c)| c[i]).collect();
                self.e_odo.advance();
                if e_closed(&self.interp, &e) {
                    self.e = e;
                    break;
                }
            }
            let all = self.frame.all();
            self.p_cands = self
                .layout
                .atoms
                .iter()
                .map(|(_, t)| atom_candidates(class, &self.frame, &self.ups, allowed_region(&self.interp, &self.e, all, t)))
                .collect();
            self.p_odo = Odometer::new(self.p_cands.iter().map(Vec::len).collect());
        }
    }

    fn current_p(&self) -> Vec<NodeSet> {
        self.p_odo.digits.iter().zip(&self.p_cands).map(|(&i, c)| c[i]).collect()
    }

    /// Encoding of the image of the current assignment under `(sigma, pi)`.
    fn encode(&self, sig: &Signature, p: &[NodeSet], sigma: &[usize], pd: &PermData, out: &mut Vec<u128>) {
        out.clear();
        for c in sig.constants() {
            out.push(pd.pi[self.interp.constants[c] as usize] as u128);
        }
        for ((f, args), src) in self.layout.fn_args.iter().zip(&pd.fn_src) {
            let table = &self.interp.functions[f];
            for &j in src {
                out.push(pd.pi[table[&args[j]] as usize] as u128);
            }
        }
        for d in 0..self.m {
            out.push(map_set(self.e[pd.inv[d] as usize], sigma).bits());
        }
        for &i in &pd.atom_src {
            out.push(map_set(p[i], sigma).bits());
        }
    }

    fn is_canonical(&self, sig: &Signature, p: &[NodeSet]) -> bool {
        let mut base = Vec::new();
        self.encode(sig, p, &self.autos[0], &self.perms[0], &mut base);
        let mut img = Vec::new();
        for sigma in &self.autos {
            for pd in &self.perms {
                self.encode(sig, p, sigma, pd, &mut img);
                if img < base {
                    return false;
                }
            }
        }
        true
    }

    fn build(&self, sig: &Signature, p: &[NodeSet]) -> StrictFinModel {
        let mut ext: Extensions = BTreeMap::new();
        let e_table = (0..self.m as ElemId).map(|d| (alloc::vec![d], self.e[d as usize])).collect();
        ext.insert(EXISTENCE.into(), e_table);
        for ((pred, t), s) in self.layout.atoms.iter().zip(p) {
            ext.entry(pred.clone()).or_default().insert(t.clone(), *s);
        }
        StrictFinModel::new(sig.clone(), self.frame.clone(), (0..self.m as ElemId).collect(), self.interp.clone(), ext)
            .expect("enumerated models satisfy the model invariants")
    }
}

impl Iterator for ModelStream {
    type Item = StrictFinModel;

    fn next(&mut self) -> Option<StrictFinModel> {
        let class = self.bounds.class;
        let depth = self.bounds.max_term_depth;
        loop {
            if self.task.is_none() {
                let (frame, m) = self.tasks.get(self.next_task)?.clone();
                self.next_task += 1;
                self.task = Some(self.open_task(frame, m));
            }
            let task = self.task.as_mut().unwrap();
            if !task.step(class, &self.bounds.signature, depth) {
                self.task = None;
                continue;
            }
            let p = task.current_p();
            if task.is_canonical(&self.bounds.signature, &p) {
                let model = task.build(&self.bounds.signature, &p);
                debug_assert!(class.contains(&model, depth));
                self.emitted += 1;
                return Some(model);
            }
        }
    }
}
