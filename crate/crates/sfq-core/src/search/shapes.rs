//! Unlabeled rooted trees and their up-sets.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::kripke::Frame;
use crate::nodeset::NodeSet;

/// Node names: `r` for the root, `k1`, `k2`, ... in breadth-first order.
pub fn node_name(i: usize) -> String {
    if i == 0 {
        String::from("r")
    } else {
        format!("k{i}")
    }
}

fn ahu(children: &[Vec<usize>], k: usize) -> String {
    let mut parts: Vec<String> = children[k].iter().map(|&c| ahu(children, c)).collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// Canonical string of the unlabeled tree given by a parent array.
pub fn shape_code(parent: &[Option<usize>]) -> String {
    let mut children = alloc::vec![Vec::new(); parent.len()];
    let mut root = 0;
    for (k, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(k),
            None => root = k,
        }
    }
    ahu(&children, root)
}

/// Frame with nodes renumbered in breadth-first order, children ordered by
/// their canonical codes.
fn canonical_frame(parent: &[Option<usize>]) -> Frame {
    let n = parent.len();
    let mut children = alloc::vec![Vec::new(); n];
    let mut root = 0;
    for (k, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(k),
            None => root = k,
        }
    }
    for k in 0..n {
        let mut c = core::mem::take(&mut children[k]);
        c.sort_by_key(|&j| ahu(&children, j));
        children[k] = c;
    }
    let mut order = alloc::vec![root];
    let mut i = 0;
    while i < order.len() {
        order.extend_from_slice(&children[order[i]]);
        i += 1;
    }
    let mut pos = alloc::vec![0; n];
    for (i, &k) in order.iter().enumerate() {
        pos[k] = i;
    }
    let new_parent: Vec<Option<usize>> = order.iter().map(|&k| parent[k].map(|p| pos[p])).collect();
    let names = (0..n).map(node_name).collect();
    Frame::from_parents(names, new_parent).expect("canonical frame is a tree")
}

/// One representative frame per unlabeled rooted tree with `n` nodes.
pub fn shapes(n: usize) -> Vec<Frame> {
    if n == 0 {
        return Vec::new();
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut parent: Vec<Option<usize>> = alloc::vec![None; n];
    fn rec(i: usize, parent: &mut Vec<Option<usize>>, seen: &mut BTreeSet<String>, out: &mut Vec<Frame>) {
        if i == parent.len() {
            let code = shape_code(parent);
            if seen.insert(code) {
                out.push(canonical_frame(parent));
            }
            return;
        }
        for p in 0..i {
            parent[i] = Some(p);
            rec(i + 1, parent, seen, out);
        }
    }
    rec(1, &mut parent, &mut seen, &mut out);
    out
}

/// A random frame with `n` nodes.
pub fn random_frame(rng: &mut impl rand::Rng, n: usize) -> Frame {
    let parent: Vec<Option<usize>> = (0..n).map(|i| if i == 0 { None } else { Some(rng.gen_range(0..i)) }).collect();
    canonical_frame(&parent)
}

/// Every up-closed node set of the frame.
pub fn up_sets(frame: &Frame) -> Vec<NodeSet> {
    fn rec(frame: &Frame, k: usize) -> Vec<NodeSet> {
        let mut out = alloc::vec![frame.up(k)];
        let mut partial = alloc::vec![NodeSet::EMPTY];
        for &c in frame.children(k) {
            let sub = rec(frame, c);
            let mut next = Vec::with_capacity(partial.len() * sub.len());
            for a in &partial {
                for b in &sub {
                    next.push(a.union(*b));
                }
            }
            partial = next;
        }
        out.extend(partial);
        out
    }
    let mut v = rec(frame, frame.root());
    v.sort_by_key(|s| (s.len(), s.bits()));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| shapes(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20]);
    }

    #[test]
    fn up_set_counts() {
        assert_eq!(up_sets(&Frame::chain(3)).len(), 4);
        let star = Frame::from_parent_indices(&[None, Some(0), Some(0), Some(0)]).unwrap();
        assert_eq!(up_sets(&star).len(), 9);
        for s in up_sets(&star) {
            assert!(star.is_up_closed(s));
        }
    }
}
