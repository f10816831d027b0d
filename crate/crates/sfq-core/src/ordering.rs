//! The canonical well-ordering on pairs of naturals and its extension to
//! addresses in a forest of finitely branching trees.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A pair `(m, n)` of naturals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexPair {
    pub m: BigUint,
    pub n: BigUint,
}

impl IndexPair {
    pub fn new(m: impl Into<BigUint>, n: impl Into<BigUint>) -> IndexPair {
        IndexPair { m: m.into(), n: n.into() }
    }

    fn max(&self) -> &BigUint {
        core::cmp::max(&self.m, &self.n)
    }
}

/// An address `(i, <n1, ..., np>)`: node `<n1, ..., np>` of tree `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeAddress {
    pub tree: BigUint,
    pub path: Vec<BigUint>,
}

impl TreeAddress {
    pub fn new(tree: impl Into<BigUint>, path: impl IntoIterator<Item = u64>) -> TreeAddress {
        TreeAddress { tree: tree.into(), path: path.into_iter().map(BigUint::from).collect() }
    }

    /// `(i, |path|)`.
    pub fn level(&self) -> IndexPair {
        IndexPair { m: self.tree.clone(), n: BigUint::from(self.path.len()) }
    }

    /// Same tree and `self.path` is a prefix of `other.path`.
    pub fn is_below(&self, other: &TreeAddress) -> bool {
        self.tree == other.tree && other.path.starts_with(&self.path)
    }
}

/// Compares by maximum, then first component, then second.
pub fn cmp_n2(a: &IndexPair, b: &IndexPair) -> Ordering {
    a.max().cmp(b.max()).then_with(|| a.m.cmp(&b.m)).then_with(|| a.n.cmp(&b.n))
}

/// Compares `(i, |m|)` by [`cmp_n2`], then paths of equal length
/// lexicographically.
pub fn cmp_preceq(a: &TreeAddress, b: &TreeAddress) -> Ordering {
    cmp_n2(&a.level(), &b.level()).then_with(|| a.path.cmp(&b.path))
}

/// The direct successor under [`cmp_n2`].
pub fn succ_n2(a: &IndexPair) -> IndexPair {
    let top = a.max().clone();
    let one = BigUint::one();
    if a.m < top {
        let next = &a.m + &one;
        if next < top {
            IndexPair { m: next, n: top }
        } else {
            IndexPair { m: top, n: BigUint::zero() }
        }
    } else if a.n < top {
        IndexPair { m: top, n: &a.n + &one }
    } else {
        IndexPair { m: BigUint::zero(), n: top + one }
    }
}

/// The direct successor under [`cmp_preceq`].
pub fn succ_preceq(a: &TreeAddress) -> TreeAddress {
    match a.path.split_last() {
        Some((last, init)) => {
            let mut path = init.to_vec();
            path.push(last + BigUint::one());
            TreeAddress { tree: a.tree.clone(), path }
        }
        None => {
            let next = succ_n2(&a.level());
            let len: usize = (&next.n).try_into().expect("path length fits in memory");
            TreeAddress { tree: next.m, path: alloc::vec![BigUint::zero(); len] }
        }
    }
}

/// An extension of `k` by zeros that lies strictly above `l` in the
/// well-ordering.
pub fn dominating_extension(k: &TreeAddress, l: &TreeAddress) -> TreeAddress {
    let mut out = k.clone();
    while cmp_preceq(l, &out) != Ordering::Less {
        out.path.push(BigUint::zero());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(cmp_n2(&IndexPair::new(0u32, 1u32), &IndexPair::new(1u32, 0u32)), Ordering::Less);
        assert_eq!(cmp_n2(&IndexPair::new(1u32, 1u32), &IndexPair::new(0u32, 2u32)), Ordering::Less);
        assert_eq!(cmp_n2(&IndexPair::new(3u32, 4u32), &IndexPair::new(3u32, 4u32)), Ordering::Equal);
        assert_eq!(succ_n2(&IndexPair::new(0u32, 0u32)), IndexPair::new(0u32, 1u32));
        assert_eq!(succ_n2(&IndexPair::new(1u32, 1u32)), IndexPair::new(0u32, 2u32));
        assert_eq!(cmp_preceq(&TreeAddress::new(0u32, []), &TreeAddress::new(1u32, [])), Ordering::Less);
        assert_eq!(cmp_preceq(&TreeAddress::new(0u32, [5]), &TreeAddress::new(0u32, [0, 0])), Ordering::Less);
        assert_eq!(succ_preceq(&TreeAddress::new(0u32, [])), TreeAddress::new(0u32, [0]));
        assert_eq!(succ_preceq(&TreeAddress::new(1u32, [])), TreeAddress::new(1u32, [0]));
        assert_eq!(succ_preceq(&TreeAddress::new(1u32, [2, 3])), TreeAddress::new(1u32, [2, 4]));
    }

    #[test]
    fn dominating() {
        let k = TreeAddress::new(0u32, [1]);
        let l = TreeAddress::new(3u32, [0, 0]);
        let e = dominating_extension(&k, &l);
        assert!(k.is_below(&e));
        assert_eq!(cmp_preceq(&l, &e), Ordering::Less);
    }
}
