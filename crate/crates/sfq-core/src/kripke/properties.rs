use super::model::StrictFinModel;
use crate::nodeset::NodeSet;

/// Default bound on the depth of closed terms inspected by the
/// constructiveness checks.
pub const DEFAULT_TERM_DEPTH: usize = 3;

/// Structural properties of a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub atomic_prevalence: bool,
    pub object_prevalence: bool,
    pub atomic_decidability: bool,
    pub total_constructibility: bool,
    pub preconstructive: bool,
    pub postconstructive: bool,
    pub two_node: bool,
    pub linear: bool,
    pub prevalent: bool,
    /// Term depth used for `postconstructive`.
    pub term_depth: usize,
}

impl StrictFinModel {
    /// Every closed atom forced somewhere is forced above every node.
    pub fn has_atomic_prevalence(&self) -> bool {
        let f = self.frame();
        self.extensions().values().flat_map(|t| t.values()).all(|&s| s.is_empty() || f.is_cofinal(s))
    }

    /// Every element enters `E` above every node.
    pub fn has_object_prevalence(&self) -> bool {
        let f = self.frame();
        self.domain().iter().all(|&d| f.is_cofinal(self.existence(d)))
    }

    /// Every closed atom is forced everywhere or nowhere.
    pub fn has_atomic_decidability(&self) -> bool {
        let all = self.frame().all();
        self.extensions().values().flat_map(|t| t.values()).all(|&s| s.is_empty() || s == all)
    }

    /// Every element is in `E` somewhere.
    pub fn has_total_constructibility(&self) -> bool {
        self.domain().iter().all(|&d| !self.existence(d).is_empty())
    }

    pub fn is_prevalent(&self) -> bool {
        self.has_atomic_prevalence() && self.has_object_prevalence()
    }

    /// The root forces no `E(c)` for any closed term `c`; every element has
    /// a name, so this says `E` is empty at the root.
    pub fn is_preconstructive(&self) -> bool {
        let r = self.frame().root();
        self.domain().iter().all(|&d| !self.existence(d).contains(r))
    }

    /// The root forces `E(c)` for every base-language closed term `c` of
    /// depth at most `depth`.
    pub fn is_postconstructive_to(&self, depth: usize) -> bool {
        let r = self.frame().root();
        self.interpretation().base_denotations(depth).into_iter().all(|d| self.existence(d).contains(r))
    }

    pub fn is_postconstructive(&self) -> bool {
        self.is_postconstructive_to(DEFAULT_TERM_DEPTH)
    }

    pub fn properties(&self) -> PropertyReport {
        self.properties_to(DEFAULT_TERM_DEPTH)
    }

    pub fn properties_to(&self, term_depth: usize) -> PropertyReport {
        let atomic_prevalence = self.has_atomic_prevalence();
        let object_prevalence = self.has_object_prevalence();
        PropertyReport {
            atomic_prevalence,
            object_prevalence,
            atomic_decidability: self.has_atomic_decidability(),
            total_constructibility: self.has_total_constructibility(),
            preconstructive: self.is_preconstructive(),
            postconstructive: self.is_postconstructive_to(term_depth),
            two_node: self.frame().len() == 2,
            linear: self.frame().is_linear(),
            prevalent: atomic_prevalence && object_prevalence,
            term_depth,
        }
    }

    /// Prevalence of a node set: every node has a member above it.
    pub fn is_prevalent_set(&self, s: NodeSet) -> bool {
        self.frame().is_cofinal(s)
    }
}
