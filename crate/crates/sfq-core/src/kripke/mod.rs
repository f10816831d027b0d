//! Finite strict finitistic models, intuitionistic models and classical
//! structures, with validation and property reports.

mod frame;
mod intuitionistic;
mod model;
mod properties;

pub use frame::{Frame, FrameError};
pub use intuitionistic::{ClassicalStructure, IntuitionisticModel, RawIntuitionisticModel};
pub use model::{Extensions, Interpretation, ModelViolation, RawModel, StrictFinModel};
pub use properties::{PropertyReport, DEFAULT_TERM_DEPTH};

pub(crate) use model::{all_tuples, fmt_tuple};


use alloc::collections::BTreeMap;
use alloc::vec;

use crate::nodeset::NodeSet;
use crate::syntax::Signature;

/// The two-node model `r < k` over domain `{0}` with `c` naming `0` and
/// `E(@0)` forced only at `k`.
pub fn w0() -> StrictFinModel {
    w0_with(Signature::from_parts(&["c"], &[], &[]).expect("valid signature"))
}

/// [`w0`] over a larger signature; other predicates stay empty.
pub fn w0_with(signature: Signature) -> StrictFinModel {
    let mut ext: Extensions = BTreeMap::new();
    ext.entry("E".into()).or_default().insert(vec![0], NodeSet::singleton(1));
    let interp = Interpretation {
        constants: signature.constants().iter().map(|c| (c.clone(), 0)).collect(),
        functions: signature
            .functions()
            .iter()
            .map(|(f, n)| (f.clone(), [(vec![0; *n], 0)].into_iter().collect()))
            .collect(),
    };
    StrictFinModel::new(signature, Frame::two_node(), vec![0], interp, ext).expect("W0 is a valid model")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w0_properties() {
        let r = w0().properties();
        assert!(r.prevalent && r.preconstructive && !r.postconstructive && r.linear && r.two_node);
    }

    #[test]
    fn single_node_full_existence_is_postconstructive() {
        let sig = Signature::from_parts(&["c"], &[], &[]).unwrap();
        let mut ext: Extensions = BTreeMap::new();
        ext.entry("E".into()).or_default().insert(vec![0], NodeSet::singleton(0));
        let interp = Interpretation { constants: [("c".into(), 0)].into_iter().collect(), functions: BTreeMap::new() };
        let m = StrictFinModel::new(sig, Frame::chain(1), vec![0], interp, ext).unwrap();
        assert!(m.properties().postconstructive);
    }

    #[test]
    fn one_branch_atom_breaks_prevalence() {
        let sig = Signature::from_parts(&[], &[], &[("P", 1)]).unwrap();
        let frame = Frame::from_parent_indices(&[None, Some(0), Some(0)]).unwrap();
        let mut ext: Extensions = BTreeMap::new();
        ext.entry("E".into()).or_default().insert(vec![0], [1, 2].into_iter().collect());
        ext.entry("P".into()).or_default().insert(vec![0], NodeSet::singleton(1));
        let m = StrictFinModel::new(sig, frame, vec![0], Interpretation::default(), ext).unwrap();
        let r = m.properties();
        assert!(!r.atomic_prevalence && r.object_prevalence && !r.prevalent);
    }
}
