#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use transys::Lattice;

/// A join-closed family of subsets of a `k`-set that contains `∅` and the
/// full set is a lattice under inclusion; every finite lattice arises this
/// way for large enough `k`.
pub fn lattice_from_masks(k: usize, seeds: &[u32]) -> Lattice {
    let full = (1u32 << k) - 1;
    let mut members = vec![0u32, full];
    members.extend(seeds.iter().map(|s| s & full));
    loop {
        let mut grew = false;
        for i in 0..members.len() {
            for j in 0..members.len() {
                let u = members[i] | members[j];
                if !members.contains(&u) {
                    members.push(u);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    members.sort_unstable();
    members.dedup();
    let n = members.len();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && members[a] & !members[b] == 0 {
                pairs.push((a, b));
            }
        }
    }
    Lattice::build_from_order(n, &pairs).expect("join-closed family with a bottom is a lattice")
}

/// Random lattices with at most `max_len` elements.
pub fn small_lattice(max_len: usize) -> impl Strategy<Value = Arc<Lattice>> {
    (2usize..=4, prop::collection::vec(any::<u32>(), 0..5))
        .prop_map(|(k, seeds)| lattice_from_masks(k, &seeds))
        .prop_filter("too many elements", move |l| l.len() <= max_len)
        .prop_map(Arc::new)
}

/// A lattice together with a list of order pairs drawn from it.
pub fn lattice_and_pairs(max_len: usize) -> impl Strategy<Value = (Arc<Lattice>, Vec<(usize, usize)>)> {
    small_lattice(max_len).prop_flat_map(|l| {
        let order: Vec<(usize, usize)> = l.poset().order_pairs().collect();
        let pick = prop::sample::subsequence(order.clone(), 0..=order.len().min(4));
        (Just(l), pick)
    })
}

pub fn named_lattices() -> Vec<(String, Arc<Lattice>)> {
    let c2 = Lattice::chain(2).unwrap();
    let mut out = vec![
        ("[0]".to_string(), Lattice::chain(0).unwrap()),
        ("[1]".to_string(), Lattice::chain(1).unwrap()),
        ("[3]".to_string(), Lattice::chain(3).unwrap()),
        ("[1]^2".to_string(), Lattice::boolean_cube(2).unwrap()),
        ("[1]^3".to_string(), Lattice::boolean_cube(3).unwrap()),
        ("[2]x[1]".to_string(), Lattice::rectangle(2, 1).unwrap()),
        ("N5".to_string(), Lattice::pentagon()),
        ("[2]^*3".to_string(), Lattice::iterated_fusion(&c2, 3).unwrap()),
    ];
    out.push(("[2]".to_string(), c2));
    out.into_iter().map(|(n, l)| (n, Arc::new(l))).collect()
}
