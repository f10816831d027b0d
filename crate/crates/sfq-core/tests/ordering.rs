use std::cmp::Ordering;

use num_bigint::BigUint;
use proptest::prelude::*;
use sfq_core::ordering::{cmp_n2, cmp_preceq, dominating_extension, succ_n2, succ_preceq, IndexPair, TreeAddress};

/// Pairs listed shell by shell: `(0,s), ..., (s-1,s)` and then
/// `(s,0), ..., (s,s)`.
fn listing(max: u32) -> Vec<(u32, u32)> {
    let mut out = vec![(0, 0)];
    for s in 1..=max {
        out.extend((0..s).map(|m| (m, s)));
        out.extend((0..=s).map(|n| (s, n)));
    }
    out
}

fn pair(p: (u32, u32)) -> IndexPair {
    IndexPair::new(p.0, p.1)
}

#[test]
fn n2_order_matches_the_listing() {
    let list = listing(10);
    assert_eq!(list.len(), 121);
    for (i, a) in list.iter().enumerate() {
        for (j, b) in list.iter().enumerate() {
            assert_eq!(cmp_n2(&pair(*a), &pair(*b)), i.cmp(&j), "{a:?} {b:?}");
        }
    }
}

#[test]
fn successor_is_the_next_listed_pair() {
    let list = listing(11);
    for w in list.windows(2).take(121) {
        assert_eq!(succ_n2(&pair(w[0])), pair(w[1]), "{:?}", w[0]);
    }
}

#[test]
fn nothing_strictly_between_a_pair_and_its_successor() {
    let list = listing(12);
    for a in listing(10) {
        let s = succ_n2(&pair(a));
        assert_eq!(cmp_n2(&pair(a), &s), Ordering::Less);
        assert!(!list.iter().any(|b| cmp_n2(&pair(a), &pair(*b)) == Ordering::Less && cmp_n2(&pair(*b), &s) == Ordering::Less));
    }
}

/// All addresses with tree index and entries at most `b` and path length at
/// most `len`.
fn addresses(b: u64, len: usize) -> Vec<TreeAddress> {
    let mut paths: Vec<Vec<u64>> = vec![vec![]];
    let mut frontier = paths.clone();
    for _ in 0..len {
        let next: Vec<Vec<u64>> = frontier
            .iter()
            .flat_map(|p| (0..=b).map(move |x| p.iter().copied().chain([x]).collect::<Vec<_>>()))
            .collect();
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    (0..=b).flat_map(|i| paths.iter().map(move |p| TreeAddress::new(i, p.clone()))).collect()
}

/// The ordering read directly off its definition.
fn preceq_oracle(a: &TreeAddress, b: &TreeAddress) -> Ordering {
    let key = |t: &TreeAddress| {
        let i = t.tree.clone();
        let l = BigUint::from(t.path.len());
        let m = std::cmp::max(i.clone(), l.clone());
        (m, i, l)
    };
    key(a).cmp(&key(b)).then_with(|| a.path.cmp(&b.path))
}

#[test]
fn address_order_matches_its_definition() {
    let all = addresses(2, 3);
    for a in &all {
        for b in &all {
            assert_eq!(cmp_preceq(a, b), preceq_oracle(a, b));
        }
    }
}

#[test]
fn prefixes_come_first() {
    let all = addresses(2, 3);
    for a in &all {
        for b in &all {
            if a.is_below(b) {
                assert_ne!(cmp_preceq(a, b), Ordering::Greater);
            }
        }
    }
}

#[test]
fn address_successor_is_least_above() {
    let all = addresses(3, 3);
    for a in addresses(2, 2) {
        let s = succ_preceq(&a);
        assert_eq!(cmp_preceq(&a, &s), Ordering::Less);
        assert!(!all.iter().any(|b| cmp_preceq(&a, b) == Ordering::Less && cmp_preceq(b, &s) == Ordering::Less));
    }
}

#[test]
fn every_address_is_eventually_dominated_above_any_node() {
    // for all k, l and k' above k there is k'' above k' with l before k''
    let all = addresses(2, 2);
    for k in &all {
        for k1 in all.iter().filter(|k1| k.is_below(k1)) {
            for l in &all {
                let witness = addresses(2, 5).into_iter().find(|k2| k1.is_below(k2) && cmp_preceq(l, k2) != Ordering::Greater);
                assert!(witness.is_some(), "{k1:?} {l:?}");
                let e = dominating_extension(k1, l);
                assert!(k1.is_below(&e));
                assert_eq!(cmp_preceq(l, &e), Ordering::Less);
            }
        }
    }
}

fn arb_pair() -> impl Strategy<Value = IndexPair> {
    (any::<u64>(), any::<u64>()).prop_map(|(m, n)| IndexPair::new(m % 1000, n % 1000))
}

fn arb_address() -> impl Strategy<Value = TreeAddress> {
    (0u64..6, prop::collection::vec(0u64..4, 0..5)).prop_map(|(i, p)| TreeAddress::new(i, p))
}

proptest! {
    #[test]
    fn n2_is_a_total_order(a in arb_pair(), b in arb_pair(), c in arb_pair()) {
        prop_assert_eq!(cmp_n2(&a, &b), cmp_n2(&b, &a).reverse());
        prop_assert_eq!(cmp_n2(&a, &b) == Ordering::Equal, a == b);
        if cmp_n2(&a, &b) != Ordering::Greater && cmp_n2(&b, &c) != Ordering::Greater {
            prop_assert_ne!(cmp_n2(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn preceq_is_a_total_order(a in arb_address(), b in arb_address(), c in arb_address()) {
        prop_assert_eq!(cmp_preceq(&a, &b), cmp_preceq(&b, &a).reverse());
        prop_assert_eq!(cmp_preceq(&a, &b) == Ordering::Equal, a == b);
        if cmp_preceq(&a, &b) != Ordering::Greater && cmp_preceq(&b, &c) != Ordering::Greater {
            prop_assert_ne!(cmp_preceq(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn finite_sets_have_a_least_element(set in prop::collection::vec(arb_address(), 1..12)) {
        let min = set.iter().min_by(|a, b| cmp_preceq(a, b)).unwrap();
        prop_assert!(set.iter().all(|b| cmp_preceq(min, b) != Ordering::Greater));
    }
}
