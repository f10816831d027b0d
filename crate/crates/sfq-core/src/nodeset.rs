//! Fixed-capacity node sets.

use core::fmt;

/// Maximum number of nodes a single model may have.
pub const MAX_NODES: usize = 128;

/// A set of node indices below [`MAX_NODES`], stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeSet(u128);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> NodeSet {
        debug_assert!(n <= MAX_NODES);
        if n >= 128 {
            NodeSet(u128::MAX)
        } else {
            NodeSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(k: usize) -> NodeSet {
        NodeSet(1u128 << k)
    }

    pub fn from_bits(bits: u128) -> NodeSet {
        NodeSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, k: usize) -> bool {
        k < MAX_NODES && self.0 >> k & 1 == 1
    }

    pub fn insert(&mut self, k: usize) {
        self.0 |= 1u128 << k;
    }

    pub fn remove(&mut self, k: usize) {
        self.0 &= !(1u128 << k);
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersect(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn minus(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> NodeSet {
        NodeSet(!self.0 & NodeSet::full(n).0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k)
            }
        })
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = NodeSet::EMPTY;
        for k in iter {
            s.insert(k);
        }
        s
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    #[test]
    fn basic_ops() {
        let a: NodeSet = [0, 2, 5].into_iter().collect();
        let b: NodeSet = [2, 3].into_iter().collect();
        assert_eq!(a.union(b).iter().collect::<Vec<_>>(), [0, 2, 3, 5]);
        assert_eq!(a.intersect(b).iter().collect::<Vec<_>>(), [2]);
        assert_eq!(a.minus(b).len(), 2);
        assert_eq!(a.complement(6).iter().collect::<Vec<_>>(), [1, 3, 4]);
        assert!(NodeSet::singleton(2).is_subset(a));
        assert_eq!(NodeSet::full(128).len(), 128);
        assert_eq!(a.first(), Some(0));
        assert_eq!(NodeSet::EMPTY.first(), None);
    }
}
