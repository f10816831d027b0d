use std::cmp::Ordering;

use sfq_core::ordering::{cmp_n2, cmp_preceq, dominating_extension, succ_n2, succ_preceq, IndexPair, TreeAddress};

use super::{Config, Report};

/// Pairs in listing order: shell `s` is `(0,s), ..., (s-1,s), (s,0), ..., (s,s)`.
fn listing(max: u64) -> Vec<(u64, u64)> {
    let mut out = vec![(0, 0)];
    for s in 1..=max {
        out.extend((0..s).map(|m| (m, s)));
        out.extend((0..=s).map(|n| (s, n)));
    }
    out
}

/// Every address with tree index and entries at most `b` and at most `len`
/// entries.
fn addresses(b: u64, len: usize) -> Vec<(u64, Vec<u64>)> {
    let mut paths: Vec<Vec<u64>> = vec![vec![]];
    let mut frontier = paths.clone();
    for _ in 0..len {
        let next: Vec<Vec<u64>> = frontier.iter().flat_map(|p| (0..=b).map(move |x| [p.as_slice(), &[x]].concat())).collect();
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    (0..=b).flat_map(|i| paths.iter().map(move |p| (i, p.clone()))).collect()
}

fn addr(a: &(u64, Vec<u64>)) -> TreeAddress {
    TreeAddress::new(a.0, a.1.clone())
}

/// Position of `(i, |path|)` in the pair listing, then the path itself.
fn address_oracle(list: &[(u64, u64)], a: &(u64, Vec<u64>), b: &(u64, Vec<u64>)) -> Ordering {
    let pos = |x: &(u64, Vec<u64>)| list.iter().position(|p| *p == (x.0, x.1.len() as u64)).expect("level within listing");
    pos(a).cmp(&pos(b)).then_with(|| a.1.cmp(&b.1))
}

fn below(a: &(u64, Vec<u64>), b: &(u64, Vec<u64>)) -> bool {
    a.0 == b.0 && b.1.starts_with(&a.1)
}

/// Pair and address orderings against their listings, and eventual
/// domination above every node.
pub fn suite(r: &mut Report, _: &Config) -> Result<(), String> {
    let list = listing(12);
    let small: Vec<(u64, u64)> = list.iter().copied().filter(|(m, n)| *m <= 10 && *n <= 10).collect();
    r.check(small.len() == 121, || format!("{} pairs with components <= 10", small.len()));
    let pos = |p: &(u64, u64)| list.iter().position(|q| q == p).expect("listed");
    for a in &small {
        for b in &small {
            let got = cmp_n2(&IndexPair::new(a.0, a.1), &IndexPair::new(b.0, b.1));
            r.check(got == pos(a).cmp(&pos(b)), || format!("cmp {a:?} {b:?}: {got:?}"));
        }
        let next = list[pos(a) + 1];
        let got = succ_n2(&IndexPair::new(a.0, a.1));
        r.check(got == IndexPair::new(next.0, next.1), || format!("succ {a:?}: {got:?}"));
    }

    let all = addresses(2, 3);
    for a in &all {
        for b in &all {
            let got = cmp_preceq(&addr(a), &addr(b));
            r.check(got == address_oracle(&list, a, b), || format!("cmp {a:?} {b:?}: {got:?}"));
        }
    }
    let wide = addresses(3, 3);
    for a in &addresses(2, 2) {
        let s = succ_preceq(&addr(a));
        let between = wide.iter().any(|b| cmp_preceq(&addr(a), &addr(b)) == Ordering::Less && cmp_preceq(&addr(b), &s) == Ordering::Less);
        r.check(cmp_preceq(&addr(a), &s) == Ordering::Less && !between, || format!("succ {a:?}: {s:?}"));
    }

    let nodes = addresses(2, 2);
    let deep = addresses(2, 5);
    for k in &nodes {
        for k1 in nodes.iter().filter(|k1| below(k, k1)) {
            for l in &nodes {
                let witness = deep.iter().find(|k2| below(k1, k2) && address_oracle(&list, l, k2) == Ordering::Less);
                r.check(witness.is_some(), || format!("no address above {k1:?} beyond {l:?}"));
                let e = dominating_extension(&addr(k1), &addr(l));
                r.check(addr(k1).is_below(&e) && cmp_preceq(&addr(l), &e) == Ordering::Less, || format!("extension of {k1:?} over {l:?}: {e:?}"));
            }
        }
    }
    Ok(())
}
