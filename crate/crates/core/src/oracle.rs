//! Slow reference implementations. Each one filters an exhaustive candidate
//! space through a direct check of the definitions and shares no search code
//! with the fast enumerators.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::lattice::Lattice;
use crate::matchstick::CoverSpace;
use crate::poset::Poset;
use crate::relation;
use crate::transfer::TransferSystem;
use crate::Result;

/// Every subset of the strict order pairs that passes the axiom check.
/// Panics beyond 31 strict pairs.
pub fn transfer_systems(poset: &Poset, saturated: bool) -> Vec<BitSet> {
    relation::naive_enumerate(poset, poset.pair_space(), saturated)
}

/// Every subset of the cover edges that satisfies both matchstick rules,
/// as bitsets over the sorted cover list. Panics beyond 24 edges.
pub fn saturated_covers(lattice: &Arc<Lattice>) -> Result<Vec<BitSet>> {
    let space = CoverSpace::new(lattice)?;
    let m = space.edges().len();
    assert!(m <= 24, "naive cover enumeration over {m} edges");
    let mut out: Vec<BitSet> = (0u32..1 << m)
        .map(|mask| BitSet::from_indices(m, (0..m).filter(|&e| mask >> e & 1 == 1)))
        .filter(|set| space.violation(set).is_none())
        .collect();
    out.sort();
    Ok(out)
}

/// Every map `P → P` that is monotone, contractive and idempotent, as image
/// arrays in lexicographic order. Panics beyond 6 elements.
pub fn interior_operators(lattice: &Lattice) -> Vec<Vec<usize>> {
    let n = lattice.len();
    assert!(n <= 6, "naive interior enumeration over {n} elements");
    let total = n.pow(n as u32);
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        for v in f.iter_mut().rev() {
            *v = c % n;
            c /= n;
        }
        let monotone = (0..n).all(|x| (0..n).all(|y| !lattice.leq(x, y) || lattice.leq(f[x], f[y])));
        let contractive = (0..n).all(|x| lattice.leq(f[x], x));
        let idempotent = (0..n).all(|x| f[f[x]] == f[x]);
        if monotone && contractive && idempotent {
            out.push(f.clone());
        }
    }
    out
}

/// Intersection of all transfer systems containing `pairs`, found by
/// scanning the naive enumeration.
pub fn least_system_containing(lattice: &Arc<Lattice>, pairs: &[(usize, usize)]) -> TransferSystem {
    let space = lattice.poset().pair_space();
    let mut acc = space.full_relation();
    for rel in transfer_systems(lattice.poset(), false) {
        let contains = pairs.iter().all(|&(x, y)| space.index(x, y).is_some_and(|p| rel.contains(p)));
        if contains {
            acc.intersect_with(&rel);
        }
    }
    TransferSystem::from_bits(lattice, acc).expect("intersection of transfer systems")
}

/// Least upper bound of two members of a family of relations, by scanning
/// all members above both. `None` if there is no unique least one.
pub fn least_upper_bound(family: &[BitSet], a: &BitSet, b: &BitSet) -> Option<usize> {
    let uppers: Vec<usize> = (0..family.len())
        .filter(|&i| a.is_subset(&family[i]) && b.is_subset(&family[i]))
        .collect();
    uppers
        .iter()
        .copied()
        .find(|&i| uppers.iter().all(|&j| family[i].is_subset(&family[j])))
}

/// Greatest lower bound counterpart of [`least_upper_bound`].
pub fn greatest_lower_bound(family: &[BitSet], a: &BitSet, b: &BitSet) -> Option<usize> {
    let lowers: Vec<usize> = (0..family.len())
        .filter(|&i| family[i].is_subset(a) && family[i].is_subset(b))
        .collect();
    lowers
        .iter()
        .copied()
        .find(|&i| lowers.iter().all(|&j| family[j].is_subset(&family[i])))
}

/// Least saturated member of `family` above `r`.
pub fn least_saturated_above(family: &[TransferSystem], r: &TransferSystem) -> Option<TransferSystem> {
    family
        .iter()
        .filter(|s| s.is_saturated() && r.le(s))
        .min_by_key(|s| s.bits().count())
        .cloned()
}
