//! Relations on a finite poset stored as bitsets over the pairs `x ≤ y`.
//!
//! This is the engine underneath [`crate::transfer`]: pair indexing,
//! incremental closure under restriction and transitivity (optionally also
//! the 2-out-of-3 rule), the direct axiom check, and the backtracking
//! enumerator. It works on arbitrary posets using the maximal-lower-bound
//! form of restriction (`x R y`, `z ≤ y` implies `w R z` for every maximal
//! `w ≤ x, z`), which reduces to the meet form on lattices.

use std::fmt;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::poset::Poset;

const NONE: u32 = u32::MAX;

/// Dense indexing of the pairs `x ≤ y` of a poset, row-major.
pub struct PairSpace {
    n: usize,
    pairs: Vec<(usize, usize)>,
    index: Vec<u32>,
    /// Non-reflexive pairs forced by restriction from each pair.
    restrictions: Vec<Vec<u32>>,
    reflexive: BitSet,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    /// Non-reflexive pairs, widest height gap first.
    branch_order: Vec<u32>,
}

impl PairSpace {
    pub(crate) fn new(poset: &Poset) -> Self {
        let n = poset.len();
        let mut pairs = Vec::new();
        let mut index = vec![NONE; n * n];
        for (x, y) in poset.order_pairs() {
            index[x * n + y] = pairs.len() as u32;
            pairs.push((x, y));
        }
        let below: Vec<Vec<usize>> = (0..n)
            .map(|y| (0..n).filter(|&z| poset.leq(z, y)).collect())
            .collect();
        let above: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).filter(|&z| poset.leq(x, z)).collect())
            .collect();
        let mut reflexive = BitSet::new(pairs.len());
        let mut restrictions = vec![Vec::new(); pairs.len()];
        for (p, &(x, y)) in pairs.iter().enumerate() {
            if x == y {
                reflexive.insert(p);
                continue;
            }
            let mut forced = Vec::new();
            for &z in &below[y] {
                for w in poset.maximal_lower_bounds(x, z) {
                    if w != z {
                        forced.push(index[w * n + z]);
                    }
                }
            }
            forced.sort_unstable();
            forced.dedup();
            forced.retain(|&q| q as usize != p);
            restrictions[p] = forced;
        }
        let mut branch_order: Vec<u32> = (0..pairs.len() as u32)
            .filter(|&p| !reflexive.contains(p as usize))
            .collect();
        branch_order.sort_by_key(|&p| {
            let (x, y) = pairs[p as usize];
            (std::cmp::Reverse(poset.height(y) - poset.height(x)), p)
        });
        PairSpace {
            n,
            pairs,
            index,
            restrictions,
            reflexive,
            below,
            above,
            branch_order,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn elements(&self) -> usize {
        self.n
    }

    pub fn pair(&self, p: usize) -> (usize, usize) {
        self.pairs[p]
    }

    /// Index of the pair `(x, y)`, or `None` when `x ≰ y`.
    #[inline]
    pub fn index(&self, x: usize, y: usize) -> Option<usize> {
        match self.index[x * self.n + y] {
            NONE => None,
            p => Some(p as usize),
        }
    }

    pub fn reflexive(&self) -> &BitSet {
        &self.reflexive
    }

    pub fn strict_pairs(&self) -> usize {
        self.pairs.len() - self.n
    }

    pub fn empty_relation(&self) -> BitSet {
        BitSet::new(self.pairs.len())
    }

    /// Every pair of the order.
    pub fn full_relation(&self) -> BitSet {
        BitSet::full(self.pairs.len())
    }

    #[inline]
    fn has(&self, rel: &BitSet, x: usize, y: usize) -> bool {
        match self.index[x * self.n + y] {
            NONE => false,
            p => rel.contains(p as usize),
        }
    }

    /// Least relation containing `rel ∪ seeds` closed under restriction and
    /// transitivity (and 2-out-of-3 when `saturate`). `rel` must already be
    /// closed; only newly inserted pairs are propagated.
    pub(crate) fn close(&self, rel: &mut BitSet, seeds: impl IntoIterator<Item = usize>, saturate: bool) {
        let mut work: Vec<usize> = Vec::new();
        let push = |rel: &mut BitSet, work: &mut Vec<usize>, p: usize| {
            if rel.insert(p) {
                work.push(p);
            }
        };
        for p in seeds {
            push(rel, &mut work, p);
        }
        while let Some(p) = work.pop() {
            let (a, b) = self.pairs[p];
            if a == b {
                continue;
            }
            for &q in &self.restrictions[p] {
                push(rel, &mut work, q as usize);
            }
            for &c in &self.below[a] {
                if c != a && self.has(rel, c, a) {
                    let q = self.index[c * self.n + b] as usize;
                    push(rel, &mut work, q);
                }
            }
            for &d in &self.above[b] {
                if d != b && self.has(rel, b, d) {
                    let q = self.index[a * self.n + d] as usize;
                    push(rel, &mut work, q);
                }
            }
            if saturate {
                // (a, b) as the short leg: a R b <= z and a R z give b R z.
                for &z in &self.above[b] {
                    if z != b && self.has(rel, a, z) {
                        let q = self.index[b * self.n + z] as usize;
                        push(rel, &mut work, q);
                    }
                }
                // (a, b) as the long leg: a R y <= b gives y R b.
                for &y in &self.above[a] {
                    if y != a && y != b && self.index[y * self.n + b] != NONE && self.has(rel, a, y) {
                        let q = self.index[y * self.n + b] as usize;
                        push(rel, &mut work, q);
                    }
                }
            }
        }
    }

    /// Closure of `seeds` starting from the discrete relation.
    pub(crate) fn closure_of(&self, seeds: impl IntoIterator<Item = usize>, saturate: bool) -> BitSet {
        let mut rel = self.reflexive.clone();
        self.close(&mut rel, seeds, saturate);
        rel
    }
}

/// The first transfer-system axiom a relation fails, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `(lower, upper)` is related but `lower ≰ upper`.
    NotRefinement { lower: usize, upper: usize },
    MissingReflexive { element: usize },
    /// `lower R middle R upper` without `lower R upper`.
    NotTransitive {
        lower: usize,
        middle: usize,
        upper: usize,
    },
    /// `source.0 R source.1` and `restrict_to ≤ source.1`, but the pair
    /// `missing` required by restriction is absent.
    NotRestrictionClosed {
        source: (usize, usize),
        restrict_to: usize,
        missing: (usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotRefinement { lower, upper } => {
                write!(f, "{lower} R {upper} but {lower} is not below {upper}")
            }
            Violation::MissingReflexive { element } => write!(f, "{element} is not related to itself"),
            Violation::NotTransitive { lower, middle, upper } => {
                write!(f, "{lower} R {middle} R {upper} but not {lower} R {upper}")
            }
            Violation::NotRestrictionClosed {
                source,
                restrict_to,
                missing,
            } => write!(
                f,
                "{} R {} and {} <= {} demand {} R {}",
                source.0, source.1, restrict_to, source.1, missing.0, missing.1
            ),
        }
    }
}

/// Direct check of the transfer-system axioms. Uses the order itself rather
/// than the precomputed restriction table, so it is independent of the
/// closure engine.
pub(crate) fn first_violation(poset: &Poset, space: &PairSpace, rel: &BitSet) -> Option<Violation> {
    let n = poset.len();
    for x in 0..n {
        if !space.has(rel, x, x) {
            return Some(Violation::MissingReflexive { element: x });
        }
    }
    let related: Vec<(usize, usize)> = rel.iter().map(|p| space.pair(p)).collect();
    for &(x, y) in &related {
        for z in 0..n {
            if space.has(rel, y, z) && !space.has(rel, x, z) {
                return Some(Violation::NotTransitive {
                    lower: x,
                    middle: y,
                    upper: z,
                });
            }
        }
    }
    for &(x, y) in &related {
        for z in 0..n {
            if !poset.leq(z, y) {
                continue;
            }
            for w in poset.maximal_lower_bounds(x, z) {
                if !space.has(rel, w, z) {
                    return Some(Violation::NotRestrictionClosed {
                        source: (x, y),
                        restrict_to: z,
                        missing: (w, z),
                    });
                }
            }
        }
    }
    None
}

/// Direct check of 2-out-of-3: `x R y ≤ z` and `x R z` imply `y R z`.
pub(crate) fn saturation_witness(poset: &Poset, space: &PairSpace, rel: &BitSet) -> Option<(usize, usize, usize)> {
    let n = poset.len();
    for p in rel.iter() {
        let (x, y) = space.pair(p);
        for z in 0..n {
            if poset.leq(y, z) && space.has(rel, x, z) && !space.has(rel, y, z) {
                return Some((x, y, z));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Only emit relations that also satisfy 2-out-of-3.
    pub saturated: bool,
    /// Worker threads; `1` searches on the calling thread.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            saturated: false,
            jobs: 1,
        }
    }
}

#[derive(Clone)]
struct Node {
    included: BitSet,
    excluded: BitSet,
}

/// All transfer systems (or all saturated ones) on the poset behind `space`,
/// sorted by size then bit pattern.
///
/// Branches on undecided non-reflexive pairs, widest gap first. Including a
/// pair propagates the full closure; a branch dies as soon as its closure
/// reaches an excluded pair. Every leaf is closed, and distinct leaves differ
/// on some decided pair, so each system is produced exactly once.
pub(crate) fn enumerate(space: &PairSpace, opts: SearchOptions) -> Vec<BitSet> {
    let root = Node {
        included: space.reflexive.clone(),
        excluded: space.empty_relation(),
    };
    let mut out = if opts.jobs <= 1 {
        let mut out = Vec::new();
        search(space, opts.saturated, root, &mut out);
        out
    } else {
        let frontier = split(space, opts.saturated, root, 8 * opts.jobs);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            frontier
                .into_par_iter()
                .flat_map_iter(|node| {
                    let mut out = Vec::new();
                    search(space, opts.saturated, node, &mut out);
                    out
                })
                .collect()
        })
    };
    out.sort();
    out
}

fn next_undecided(space: &PairSpace, node: &Node) -> Option<usize> {
    space
        .branch_order
        .iter()
        .map(|&p| p as usize)
        .find(|&p| !node.included.contains(p) && !node.excluded.contains(p))
}

fn children(space: &PairSpace, saturated: bool, node: Node, p: usize) -> (Option<Node>, Node) {
    let mut inc = node.included.clone();
    space.close(&mut inc, [p], saturated);
    let with = (!inc.intersects(&node.excluded)).then(|| Node {
        included: inc,
        excluded: node.excluded.clone(),
    });
    let mut without = node;
    without.excluded.insert(p);
    (with, without)
}

fn search(space: &PairSpace, saturated: bool, node: Node, out: &mut Vec<BitSet>) {
    match next_undecided(space, &node) {
        None => out.push(node.included),
        Some(p) => {
            let (with, without) = children(space, saturated, node, p);
            if let Some(w) = with {
                search(space, saturated, w, out);
            }
            search(space, saturated, without, out);
        }
    }
}

/// Breadth-first expansion into at least `target` independent subtrees
/// (fewer if the tree is exhausted first).
fn split(space: &PairSpace, saturated: bool, root: Node, target: usize) -> Vec<Node> {
    let mut frontier = vec![root];
    loop {
        if frontier.len() >= target {
            return frontier;
        }
        let mut next = Vec::with_capacity(frontier.len() * 2);
        let mut grew = false;
        for node in frontier {
            match next_undecided(space, &node) {
                None => next.push(node),
                Some(p) => {
                    grew = true;
                    let (with, without) = children(space, saturated, node, p);
                    next.extend(with);
                    next.push(without);
                }
            }
        }
        frontier = next;
        if !grew {
            return frontier;
        }
    }
}

/// Reference enumerator: every subset of the non-reflexive pairs, filtered
/// by the direct axiom check. Exponential; only for cross-checking.
pub(crate) fn naive_enumerate(poset: &Poset, space: &PairSpace, saturated: bool) -> Vec<BitSet> {
    let strict: Vec<usize> = (0..space.len())
        .filter(|&p| !space.reflexive.contains(p))
        .collect();
    assert!(strict.len() < 32, "naive enumeration over {} pairs", strict.len());
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << strict.len()) {
        let mut rel = space.reflexive.clone();
        for (bit, &p) in strict.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel.insert(p);
            }
        }
        if first_violation(poset, space, &rel).is_none()
            && (!saturated || saturation_witness(poset, space, &rel).is_none())
        {
            out.push(rel);
        }
    }
    out.sort();
    out
}
