//! Saturated covers of modular lattices and their bijection with saturated
//! transfer systems.
//!
//! A saturated cover is a set `Q` of cover edges such that
//!
//! 1. if `x ∨ y` covers `x` and `(x, x ∨ y) ∈ Q` then `(x ∧ y, y) ∈ Q`;
//! 2. no covering diamond has exactly three of its four edges in `Q`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{size_check, Error, Result};
use crate::lattice::{escape, CoverPair, Lattice, LatticeJson};
use crate::limits::Limits;
use crate::transfer::TransferSystem;

/// Why an edge set is not a saturated cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverViolation {
    NotModular,
    NotACover(CoverPair),
    /// `trigger` is in the set but the restricted edge `missing` is not.
    Rule1 { trigger: CoverPair, missing: CoverPair },
    /// Three edges of the diamond `bottom < left, right < top` are in the
    /// set and `missing` is not.
    Rule2 { diamond: [usize; 4], missing: CoverPair },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::NotModular => write!(f, "lattice is not modular"),
            CoverViolation::NotACover(e) => write!(f, "({}, {}) is not a cover", e.lower, e.upper),
            CoverViolation::Rule1 { trigger, missing } => write!(
                f,
                "edge ({}, {}) requires its restriction ({}, {})",
                trigger.lower, trigger.upper, missing.lower, missing.upper
            ),
            CoverViolation::Rule2 { diamond, missing } => write!(
                f,
                "diamond {diamond:?} has three edges but not ({}, {})",
                missing.lower, missing.upper
            ),
        }
    }
}

/// Cover edges of a modular lattice with the two rules precompiled.
pub struct CoverSpace {
    lattice: Arc<Lattice>,
    edges: Vec<CoverPair>,
    /// Edge `e` in `Q` forces every edge in `implies[e]`.
    implies: Vec<Vec<usize>>,
    implied_by: Vec<Vec<usize>>,
    /// Edge indices `[bottom-left, bottom-right, left-top, right-top]`.
    diamonds: Vec<[usize; 4]>,
    /// Element tetrads `[bottom, left, right, top]`, parallel to `diamonds`.
    tetrads: Vec<[usize; 4]>,
    diamonds_of: Vec<Vec<usize>>,
}

impl CoverSpace {
    pub fn new(lattice: &Arc<Lattice>) -> Result<Self> {
        if !lattice.is_modular() {
            return Err(Error::NotModular);
        }
        let l = lattice.as_ref();
        let edges = l.cover_pairs();
        let idx = |a: usize, b: usize| edges.binary_search(&CoverPair { lower: a, upper: b }).ok();
        let m = edges.len();
        let n = l.len();
        let mut implies = vec![Vec::new(); m];
        for x in 0..n {
            for y in 0..n {
                let (j, mt) = (l.join(x, y), l.meet(x, y));
                if let Some(e) = idx(x, j) {
                    let f = idx(mt, y).expect("modular: y covers x ∧ y");
                    if e != f {
                        implies[e].push(f);
                    }
                }
            }
        }
        let mut implied_by = vec![Vec::new(); m];
        for (e, fs) in implies.iter_mut().enumerate() {
            fs.sort_unstable();
            fs.dedup();
            for &f in fs.iter() {
                implied_by[f].push(e);
            }
        }
        let mut diamonds = Vec::new();
        let mut tetrads = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let (b, t) = (l.meet(x, y), l.join(x, y));
                if let (Some(bx), Some(by), Some(xt), Some(yt)) = (idx(b, x), idx(b, y), idx(x, t), idx(y, t)) {
                    diamonds.push([bx, by, xt, yt]);
                    tetrads.push([b, x, y, t]);
                }
            }
        }
        let mut diamonds_of = vec![Vec::new(); m];
        for (d, es) in diamonds.iter().enumerate() {
            for &e in es {
                diamonds_of[e].push(d);
            }
        }
        Ok(CoverSpace {
            lattice: Arc::clone(lattice),
            edges,
            implies,
            implied_by,
            diamonds,
            tetrads,
            diamonds_of,
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn edges(&self) -> &[CoverPair] {
        &self.edges
    }

    pub fn index(&self, e: CoverPair) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn diamond_count(&self) -> usize {
        self.diamonds.len()
    }

    /// Implications `(trigger, forced)` from the first rule.
    pub fn implications(&self) -> impl Iterator<Item = (CoverPair, CoverPair)> + '_ {
        self.implies
            .iter()
            .enumerate()
            .flat_map(move |(e, fs)| fs.iter().map(move |&f| (self.edges[e], self.edges[f])))
    }

    /// First rule violation of an edge bitset, by direct check of both rules.
    pub fn violation(&self, set: &BitSet) -> Option<CoverViolation> {
        let l = &self.lattice;
        let n = l.len();
        let has = |a: usize, b: usize| self.index(CoverPair { lower: a, upper: b }).is_some_and(|e| set.contains(e));
        for (d, es) in self.diamonds.iter().enumerate() {
            let outside: Vec<usize> = es.iter().copied().filter(|&e| !set.contains(e)).collect();
            if outside.len() == 1 {
                return Some(CoverViolation::Rule2 {
                    diamond: self.tetrads[d],
                    missing: self.edges[outside[0]],
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                let j = l.join(x, y);
                if l.is_cover(x, j) && has(x, j) && !has(l.meet(x, y), y) {
                    return Some(CoverViolation::Rule1 {
                        trigger: CoverPair { lower: x, upper: j },
                        missing: CoverPair {
                            lower: l.meet(x, y),
                            upper: y,
                        },
                    });
                }
            }
        }
        None
    }
}

/// A saturated cover of a modular lattice.
#[derive(Clone)]
pub struct SaturatedCover {
    lattice: Arc<Lattice>,
    edges: BitSet,
    all: Arc<Vec<CoverPair>>,
}

impl SaturatedCover {
    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    /// Bitset over the lattice's sorted cover list.
    pub fn bits(&self) -> &BitSet {
        &self.edges
    }

    pub fn edges(&self) -> Vec<CoverPair> {
        self.edges.iter().map(|e| self.all[e]).collect()
    }

    pub fn len(&self) -> usize {
        self.edges.count()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, lower: usize, upper: usize) -> bool {
        self.all
            .binary_search(&CoverPair { lower, upper })
            .is_ok_and(|e| self.edges.contains(e))
    }

    pub fn to_json(&self) -> SaturatedCoverJson {
        SaturatedCoverJson {
            lattice: self.lattice.to_json(),
            edges: self.edges().iter().map(|e| [e.lower, e.upper]).collect(),
        }
    }

    /// Hasse diagram in gray with the chosen edges bold.
    pub fn to_dot(&self) -> String {
        let l = &self.lattice;
        let mut s = String::from("digraph cover {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n");
        for x in 0..l.len() {
            s.push_str(&format!("  n{x} [label=\"{}\"];\n", escape(l.name(x))));
        }
        for (e, c) in self.all.iter().enumerate() {
            let style = if self.edges.contains(e) {
                "penwidth=3, color=black"
            } else {
                "color=gray"
            };
            s.push_str(&format!("  n{} -> n{} [arrowhead=none, {style}];\n", c.lower, c.upper));
        }
        s.push_str("}\n");
        s
    }
}

impl PartialEq for SaturatedCover {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges && crate::transfer::same_ambient(&self.lattice, &other.lattice)
    }
}

impl Eq for SaturatedCover {}

impl fmt::Debug for SaturatedCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.edges().iter().map(|e| (e.lower, e.upper)))
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturatedCoverJson {
    pub lattice: LatticeJson,
    pub edges: Vec<[usize; 2]>,
}

fn wrap(space: &CoverSpace, edges: BitSet) -> SaturatedCover {
    SaturatedCover {
        lattice: Arc::clone(&space.lattice),
        edges,
        all: Arc::new(space.edges.clone()),
    }
}

/// Checks an edge set against both rules.
pub fn validate_cover(lattice: &Arc<Lattice>, edges: &[CoverPair]) -> std::result::Result<SaturatedCover, CoverViolation> {
    let space = CoverSpace::new(lattice).map_err(|_| CoverViolation::NotModular)?;
    let mut set = BitSet::new(space.edges.len());
    for &e in edges {
        set.insert(space.index(e).ok_or(CoverViolation::NotACover(e))?);
    }
    match space.violation(&set) {
        Some(v) => Err(v),
        None => Ok(wrap(&space, set)),
    }
}

const UNDECIDED: u8 = 2;

#[derive(Clone)]
struct State {
    value: Vec<u8>,
}

impl State {
    /// Sets `e` and propagates both rules; `false` on conflict.
    fn assign(&mut self, space: &CoverSpace, e: usize, v: u8) -> bool {
        let mut queue = vec![(e, v)];
        while let Some((e, v)) = queue.pop() {
            match self.value[e] {
                UNDECIDED => self.value[e] = v,
                cur if cur == v => continue,
                _ => return false,
            }
            if v == 1 {
                queue.extend(space.implies[e].iter().map(|&f| (f, 1)));
            } else {
                queue.extend(space.implied_by[e].iter().map(|&g| (g, 0)));
            }
            for &d in &space.diamonds_of[e] {
                let es = space.diamonds[d];
                let count = |t: u8| es.iter().filter(|&&f| self.value[f] == t).count();
                let (inside, outside, open) = (count(1), count(0), count(UNDECIDED));
                let last = || *es.iter().find(|&&f| self.value[f] == UNDECIDED).unwrap();
                match (inside, outside, open) {
                    (3, 1, _) => return false,
                    (3, 0, 1) => queue.push((last(), 1)),
                    (2, 1, 1) => queue.push((last(), 0)),
                    _ => {}
                }
            }
        }
        true
    }
}

/// All saturated covers, in canonical order (by size, then bit pattern).
///
/// Branches on edges in index order with unit propagation: the first rule
/// along its implication graph (and contrapositively), the second through
/// per-diamond in/out counts.
pub fn enumerate_covers(lattice: &Arc<Lattice>) -> Result<Vec<SaturatedCover>> {
    enumerate_covers_with(lattice, &Limits::default())
}

pub fn enumerate_covers_with(lattice: &Arc<Lattice>, limits: &Limits) -> Result<Vec<SaturatedCover>> {
    let space = CoverSpace::new(lattice)?;
    size_check("cover edges", space.edges.len(), limits.max_cover_edges)?;
    let mut out = Vec::new();
    let root = State {
        value: vec![UNDECIDED; space.edges.len()],
    };
    branch(&space, root, &mut out);
    out.sort();
    let covers = out
        .into_iter()
        .map(|bits| {
            debug_assert!(space.violation(&bits).is_none());
            wrap(&space, bits)
        })
        .collect();
    Ok(covers)
}

fn branch(space: &CoverSpace, state: State, out: &mut Vec<BitSet>) {
    match state.value.iter().position(|&v| v == UNDECIDED) {
        None => out.push(BitSet::from_indices(
            state.value.len(),
            state.value.iter().enumerate().filter(|(_, &v)| v == 1).map(|(e, _)| e),
        )),
        Some(e) => {
            for v in [1, 0] {
                let mut child = state.clone();
                if child.assign(space, e, v) {
                    branch(space, child, out);
                }
            }
        }
    }
}

/// The transfer system generated by the cover's edges; always saturated.
pub fn cover_to_system(q: &SaturatedCover) -> TransferSystem {
    let pairs: Vec<(usize, usize)> = q.edges().iter().map(|e| (e.lower, e.upper)).collect();
    let r = TransferSystem::generate(&q.lattice, &pairs).expect("covers refine the order");
    assert!(r.is_saturated(), "system generated by a saturated cover is not saturated");
    r
}

/// The cover relations of a saturated system.
pub fn system_to_cover(r: &TransferSystem) -> Result<SaturatedCover> {
    let lattice = r.lattice();
    if !lattice.is_modular() {
        return Err(Error::NotModular);
    }
    if !r.is_saturated() {
        return Err(Error::NotSaturated);
    }
    let edges: Vec<CoverPair> = lattice
        .cover_pairs()
        .into_iter()
        .filter(|e| r.relates(e.lower, e.upper))
        .collect();
    Ok(validate_cover(lattice, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shared(l: Lattice) -> Arc<Lattice> {
        Arc::new(l)
    }

    #[test]
    fn validate_examples() {
        let sq = shared(Lattice::boolean_cube(2).unwrap());
        assert!(validate_cover(&sq, &[]).is_ok());
        assert!(validate_cover(&sq, &sq.cover_pairs()).is_ok());
        let three = [(0, 1), (1, 3), (2, 3)].map(CoverPair::from);
        assert_eq!(
            validate_cover(&sq, &three).unwrap_err(),
            CoverViolation::Rule2 {
                diamond: [0, 1, 2, 3],
                missing: CoverPair { lower: 0, upper: 2 }
            }
        );
        let top_only = [CoverPair::from((1, 3))];
        assert!(matches!(validate_cover(&sq, &top_only).unwrap_err(), CoverViolation::Rule1 { .. }));
        assert_eq!(
            validate_cover(&sq, &[CoverPair::from((0, 3))]).unwrap_err(),
            CoverViolation::NotACover(CoverPair { lower: 0, upper: 3 })
        );
        let n5 = shared(Lattice::pentagon());
        assert_eq!(validate_cover(&n5, &[]).unwrap_err(), CoverViolation::NotModular);
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_covers(&shared(Lattice::boolean_cube(2).unwrap())).unwrap().len(), 7);
        assert_eq!(enumerate_covers(&shared(Lattice::boolean_cube(3).unwrap())).unwrap().len(), 61);
        assert_eq!(enumerate_covers(&shared(Lattice::sub_cp_cp(2).unwrap())).unwrap().len(), 12);
        assert_eq!(enumerate_covers(&shared(Lattice::chain(4).unwrap())).unwrap().len(), 16);
        assert!(matches!(
            enumerate_covers(&shared(Lattice::pentagon())),
            Err(Error::NotModular)
        ));
    }

    #[test]
    fn round_trip_examples() {
        let sq = shared(Lattice::boolean_cube(2).unwrap());
        let empty = validate_cover(&sq, &[]).unwrap();
        assert!(cover_to_system(&empty).is_discrete());
        let all = validate_cover(&sq, &sq.cover_pairs()).unwrap();
        assert_eq!(cover_to_system(&all), TransferSystem::complete(&sq));
        assert_eq!(system_to_cover(&TransferSystem::complete(&sq)).unwrap(), all);
        assert!(system_to_cover(&TransferSystem::discrete(&sq)).unwrap().is_empty());
        let c2 = shared(Lattice::chain(2).unwrap());
        let r = TransferSystem::generate(&c2, &[(0, 2)]).unwrap();
        assert_eq!(system_to_cover(&r).unwrap_err(), Error::NotSaturated);
    }

    #[test]
    fn dot_marks_chosen_edges() {
        let sq = shared(Lattice::boolean_cube(2).unwrap());
        let q = validate_cover(&sq, &[CoverPair::from((0, 1))]).unwrap();
        let dot = q.to_dot();
        assert_eq!(dot.matches("penwidth=3").count(), 1);
        assert_eq!(dot.matches("color=gray").count(), 3);
    }
}
