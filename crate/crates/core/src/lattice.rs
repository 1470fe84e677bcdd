//! Finite bounded lattices and the standard families built from them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{size_check, Error, Result};
use crate::limits::Limits;
use crate::poset::Poset;

/// A finite bounded lattice on elements `0..n`.
///
/// Meet and join are stored as full `n × n` tables. `rank` is present exactly
/// when the lattice is graded by cover distance from the bottom.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    rank: Option<Vec<usize>>,
}

/// Upper cover `upper` of `lower` in some lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoverPair {
    pub lower: usize,
    pub upper: usize,
}

impl From<(usize, usize)> for CoverPair {
    fn from((lower, upper): (usize, usize)) -> Self {
        CoverPair { lower, upper }
    }
}

impl Lattice {
    /// Lattice whose order is the reflexive-transitive closure of `pairs`.
    pub fn build_from_order(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::build_named(n, pairs, None)
    }

    pub fn build_named(n: usize, pairs: &[(usize, usize)], names: Option<Vec<String>>) -> Result<Self> {
        size_check("lattice elements", n, Limits::default().max_elements)?;
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::Invalid(format!("{} names for {n} elements", names.len())));
            }
        }
        Self::from_poset(Poset::from_relation(n, pairs, names)?)
    }

    /// Computes meet and join tables by brute force over the order.
    pub fn from_poset(poset: Poset) -> Result<Self> {
        let n = poset.len();
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| poset.leq(b, x)))
            .ok_or(Error::NotBounded("bottom"))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| poset.leq(x, t)))
            .ok_or(Error::NotBounded("top"))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let m = brute_bound(&poset, x, y, false).ok_or(Error::NotALattice(x, y, "meet"))?;
                let j = brute_bound(&poset, x, y, true).ok_or(Error::NotALattice(x, y, "join"))?;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }
        Ok(Self::assemble(poset, meet, join, bottom, top))
    }

    fn assemble(poset: Poset, meet: Vec<usize>, join: Vec<usize>, bottom: usize, top: usize) -> Self {
        let mut lattice = Lattice {
            poset,
            meet,
            join,
            bottom,
            top,
            rank: None,
        };
        lattice.rank = lattice.grade().ok();
        lattice
    }

    /// The total order `[m] = {0 < 1 < ⋯ < m}`.
    pub fn chain(m: usize) -> Result<Self> {
        Self::chain_with(m, &Limits::default())
    }

    pub fn chain_with(m: usize, limits: &Limits) -> Result<Self> {
        let n = m + 1;
        size_check("chain elements", n, limits.max_elements)?;
        let pairs: Vec<_> = (0..m).map(|i| (i, i + 1)).collect();
        let poset = Poset::from_relation(n, &pairs, None)?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                meet[x * n + y] = x.min(y);
                join[x * n + y] = x.max(y);
            }
        }
        Ok(Self::assemble(poset, meet, join, 0, m))
    }

    /// Subsets of a `k`-set under inclusion; element `i` is the subset with
    /// bitmask `i`.
    pub fn boolean_cube(k: usize) -> Result<Self> {
        Self::boolean_cube_with(k, &Limits::default())
    }

    pub fn boolean_cube_with(k: usize, limits: &Limits) -> Result<Self> {
        size_check("cube dimension", k, limits.max_cube_dim)?;
        let n = 1usize << k;
        size_check("cube elements", n, limits.max_elements)?;
        let mut pairs = Vec::new();
        for x in 0..n {
            for b in 0..k {
                if x & (1 << b) == 0 {
                    pairs.push((x, x | (1 << b)));
                }
            }
        }
        let names = (0..n)
            .map(|x| {
                if k == 0 {
                    "∅".to_string()
                } else {
                    (0..k).rev().map(|b| if x >> b & 1 == 1 { '1' } else { '0' }).collect()
                }
            })
            .collect();
        let poset = Poset::from_relation(n, &pairs, Some(names))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                meet[x * n + y] = x & y;
                join[x * n + y] = x | y;
            }
        }
        Ok(Self::assemble(poset, meet, join, 0, n - 1))
    }

    /// Componentwise product; `(p, q)` has index `p * |Q| + q`.
    pub fn product(p: &Lattice, q: &Lattice) -> Result<Self> {
        let (np, nq) = (p.len(), q.len());
        let n = np * nq;
        size_check("product elements", n, Limits::default().max_elements)?;
        let idx = |a: usize, b: usize| a * nq + b;
        let mut pairs = Vec::new();
        for a in 0..np {
            for b in 0..nq {
                for &(a0, a1) in p.covers() {
                    if a0 == a {
                        pairs.push((idx(a, b), idx(a1, b)));
                    }
                }
                for &(b0, b1) in q.covers() {
                    if b0 == b {
                        pairs.push((idx(a, b), idx(a, b1)));
                    }
                }
            }
        }
        let names = (0..np)
            .flat_map(|a| (0..nq).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", p.name(a), q.name(b)))
            .collect();
        let poset = Poset::from_relation(n, &pairs, Some(names))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            let (a, b) = (x / nq, x % nq);
            for y in 0..n {
                let (c, d) = (y / nq, y % nq);
                meet[x * n + y] = idx(p.meet(a, c), q.meet(b, d));
                join[x * n + y] = idx(p.join(a, c), q.join(b, d));
            }
        }
        Ok(Self::assemble(poset, meet, join, idx(p.bottom, q.bottom), idx(p.top, q.top)))
    }

    /// `[m] × [n]`.
    pub fn rectangle(m: usize, n: usize) -> Result<Self> {
        Self::product(&Self::chain(m)?, &Self::chain(n)?)
    }

    /// Glues `p` and `q` along their extremes; interiors stay incomparable.
    ///
    /// Elements are relabelled: `0` is the bottom, then the interior of `p`
    /// in its own order, then the interior of `q`, then the top. A one-element
    /// operand contributes no interior, so its extremes are simply the
    /// result's.
    pub fn fusion(p: &Lattice, q: &Lattice) -> Result<Self> {
        Self::fuse(&[p, q], false)
    }

    /// `k`-fold fusion of `p` with itself; `k = 0` gives the unit `[1]`.
    pub fn iterated_fusion(p: &Lattice, k: usize) -> Result<Self> {
        match k {
            0 => Self::chain(1),
            1 => Ok(p.clone()),
            _ => Self::fuse(&vec![p; k], true),
        }
    }

    fn fuse(parts: &[&Lattice], suffix: bool) -> Result<Self> {
        let interiors: Vec<Vec<usize>> = parts.iter().map(|l| l.interior()).collect();
        let n = 2 + interiors.iter().map(Vec::len).sum::<usize>();
        size_check("fusion elements", n, Limits::default().max_elements)?;
        let top = n - 1;
        let mut names = vec![parts[0].name(parts[0].bottom).to_string()];
        // (part, original element) for every new interior index
        let mut origin = vec![(usize::MAX, 0); n];
        let mut offsets = Vec::new();
        for (k, (part, inner)) in parts.iter().zip(&interiors).enumerate() {
            offsets.push(names.len());
            for &x in inner {
                origin[names.len()] = (k, x);
                names.push(if suffix {
                    format!("{}_{}", part.name(x), k + 1)
                } else {
                    part.name(x).to_string()
                });
            }
        }
        names.push(parts[0].name(parts[0].top).to_string());
        let mut pairs = vec![(0, top)];
        for (k, (part, inner)) in parts.iter().zip(&interiors).enumerate() {
            let local = |x: usize| offsets[k] + inner.iter().position(|&y| y == x).unwrap();
            for &(a, b) in part.covers() {
                let a2 = if a == part.bottom { 0 } else { local(a) };
                let b2 = if b == part.top { top } else { local(b) };
                pairs.push((a2, b2));
            }
        }
        let poset = Poset::from_relation(n, &pairs, Some(names))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (m, j) = if x == y {
                    (x, x)
                } else if x == 0 || y == top {
                    (x, y)
                } else if y == 0 || x == top {
                    (y, x)
                } else {
                    let ((kx, ox), (ky, oy)) = (origin[x], origin[y]);
                    if kx != ky {
                        (0, top)
                    } else {
                        let part = parts[kx];
                        let map = |e: usize| {
                            if e == part.bottom {
                                0
                            } else if e == part.top {
                                top
                            } else {
                                offsets[kx] + interiors[kx].iter().position(|&z| z == e).unwrap()
                            }
                        };
                        (map(part.meet(ox, oy)), map(part.join(ox, oy)))
                    }
                };
                meet[x * n + y] = m;
                join[x * n + y] = j;
            }
        }
        Ok(Self::assemble(poset, meet, join, 0, top))
    }

    /// Subgroup lattice of `C_p × C_p`, realised as `[2]^{*(p+1)}` with labels
    /// `e`, `H1`, …, `H{p+1}`, `G`.
    pub fn sub_cp_cp(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        size_check("prime", p as usize, 101)?;
        let k = p as usize + 1;
        let mut l = Self::iterated_fusion(&Self::chain(2)?, k)?;
        let mut names = vec!["e".to_string()];
        names.extend((1..=k).map(|i| format!("H{i}")));
        names.push("G".to_string());
        l.poset = l.poset.renamed(names);
        Ok(l)
    }

    /// The pentagon `N₅`: `⊥ < a < b < ⊤` and `⊥ < c < ⊤`.
    pub fn pentagon() -> Self {
        let names = ["⊥", "a", "b", "c", "⊤"].map(String::from).to_vec();
        Self::build_named(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], Some(names)).expect("pentagon")
    }

    /// Order-dual lattice on the same indices.
    pub fn dual(&self) -> Self {
        let n = self.len();
        let pairs: Vec<_> = self.covers().iter().map(|&(a, b)| (b, a)).collect();
        let poset = Poset::from_relation(n, &pairs, Some(self.poset.names().to_vec())).expect("dual order");
        Self::assemble(poset, self.join.clone(), self.meet.clone(), self.top, self.bottom)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn name(&self, x: usize) -> &str {
        self.poset.name(x)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.poset.lt(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |m, x| self.meet(m, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |j, x| self.join(j, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        self.poset.covers()
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.poset.is_cover(x, y)
    }

    pub fn cover_pairs(&self) -> Vec<CoverPair> {
        self.covers().iter().map(|&c| c.into()).collect()
    }

    /// Cover-distance rank, when graded.
    pub fn rank(&self) -> Option<&[usize]> {
        self.rank.as_deref()
    }

    /// Elements other than the bottom and top.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| x != self.bottom && x != self.top).collect()
    }

    /// Ranks by shortest cover path from the bottom, then checks both grading
    /// axioms: covers raise rank by exactly one and `x < y` implies
    /// `ρ(x) < ρ(y)`.
    pub fn grade(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let mut rank = vec![usize::MAX; n];
        rank[self.bottom] = 0;
        let mut queue = std::collections::VecDeque::from([self.bottom]);
        while let Some(x) = queue.pop_front() {
            for &(a, b) in self.covers() {
                if a == x && rank[b] == usize::MAX {
                    rank[b] = rank[x] + 1;
                    queue.push_back(b);
                }
            }
        }
        for &(a, b) in self.covers() {
            if rank[b] != rank[a] + 1 {
                return Err(Error::NotGraded(format!(
                    "{} covers {} but ranks are {} and {}",
                    self.name(b),
                    self.name(a),
                    rank[b],
                    rank[a]
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && rank[x] >= rank[y] {
                    return Err(Error::NotGraded(format!("{x} < {y} without rank increase")));
                }
            }
        }
        Ok(rank)
    }

    /// `a ≤ b ⇒ a ∨ (x ∧ b) = (a ∨ x) ∧ b`, checked exhaustively.
    pub fn is_modular(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).filter(|&b| self.leq(a, b)).all(|b| {
                (0..n).all(|x| self.join(a, self.meet(x, b)) == self.meet(self.join(a, x), b))
            })
        })
    }

    /// Whether some 5-element sublattice is a pentagon.
    pub fn has_pentagon_sublattice(&self) -> bool {
        // N5 = {m < a < b < j, m < c < j} with a ∧ c = m, b ∨ c = j, a ∨ c = j, b ∧ c = m.
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if !self.lt(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.comparable(a, c) || self.comparable(b, c) {
                        continue;
                    }
                    if self.meet(a, c) == self.meet(b, c) && self.join(a, c) == self.join(b, c) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn comparable(&self, x: usize, y: usize) -> bool {
        self.poset.comparable(x, y)
    }

    /// The subposet left after deleting the bottom and/or top, with the
    /// original index of each remaining element.
    pub fn delete_extremes(&self, drop_bottom: bool, drop_top: bool) -> (Poset, Vec<usize>) {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&x| !(drop_bottom && x == self.bottom) && !(drop_top && x == self.top))
            .collect();
        (self.poset.induced(&keep), keep)
    }

    /// Lexicographically least order matrix over all level-preserving
    /// relabellings; equal forms mean isomorphic lattices.
    ///
    /// Entries are compared in the order they become determined while
    /// positions are filled: for position `i`, the pairs `(j, i)` and `(i, j)`
    /// for every earlier `j`. Interchangeable elements (same strict up- and
    /// down-sets) are only tried in index order.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        let n = self.len();
        size_check("canonical form elements", n, Limits::default().max_canonical_elements)?;
        let level: Vec<usize> = (0..n).map(|x| self.poset.height(x)).collect();
        let mut slots = level.clone();
        slots.sort_unstable();
        let signature = |x: usize| -> (Vec<bool>, Vec<bool>) {
            (
                (0..n).map(|z| self.lt(x, z)).collect(),
                (0..n).map(|z| self.lt(z, x)).collect(),
            )
        };
        let sigs: Vec<_> = (0..n).map(signature).collect();
        let earlier_twin: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..x).filter(|&y| sigs[y] == sigs[x]).collect())
            .collect();
        let mut search = CanonSearch {
            lattice: self,
            level: &level,
            slots: &slots,
            earlier_twin: &earlier_twin,
            perm: Vec::with_capacity(n),
            used: vec![false; n],
            current: Vec::new(),
            best: None,
        };
        search.run(false);
        Ok(CanonicalForm {
            n,
            entries: search.best.unwrap_or_default(),
        })
    }

    pub fn is_isomorphic(&self, other: &Lattice) -> Result<bool> {
        Ok(self.len() == other.len() && self.canonical_form()? == other.canonical_form()?)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            n: self.len(),
            names: self.names().to_vec(),
            leq_pairs: self.covers().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(json: &LatticeJson) -> Result<Self> {
        let pairs: Vec<_> = json.leq_pairs.iter().map(|&[a, b]| (a, b)).collect();
        let names = (!json.names.is_empty()).then(|| json.names.clone());
        Self::build_named(json.n, &pairs, names)
    }

    /// Graphviz Hasse diagram, bottom-up.
    pub fn hasse_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n");
        for x in 0..self.len() {
            s.push_str(&format!("  n{x} [label=\"{}\"];\n", escape(self.name(x))));
        }
        for &(a, b) in self.covers() {
            s.push_str(&format!("  n{a} -> n{b} [arrowhead=none];\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn brute_bound(poset: &Poset, x: usize, y: usize, upper: bool) -> Option<usize> {
    let n = poset.len();
    let rel = |a: usize, b: usize| if upper { poset.leq(a, b) } else { poset.leq(b, a) };
    let bounds: Vec<usize> = (0..n).filter(|&z| rel(x, z) && rel(y, z)).collect();
    bounds
        .iter()
        .copied()
        .find(|&b| bounds.iter().all(|&c| rel(b, c)))
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Poset {
    fn renamed(&self, names: Vec<String>) -> Poset {
        let keep: Vec<usize> = (0..self.len()).collect();
        let mut p = self.induced(&keep);
        p = Poset::from_matrix(p.len(), p.order_matrix().to_vec(), Some(names)).expect("same order");
        p
    }
}

struct CanonSearch<'a> {
    lattice: &'a Lattice,
    level: &'a [usize],
    slots: &'a [usize],
    earlier_twin: &'a [Vec<usize>],
    perm: Vec<usize>,
    used: Vec<bool>,
    current: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl CanonSearch<'_> {
    fn run(&mut self, already_less: bool) {
        let i = self.perm.len();
        let n = self.slots.len();
        if i == n {
            if already_less || self.best.is_none() {
                self.best = Some(self.current.clone());
            }
            return;
        }
        for x in 0..n {
            if self.used[x]
                || self.level[x] != self.slots[i]
                || self.earlier_twin[x].iter().any(|&y| !self.used[y])
            {
                continue;
            }
            let start = self.current.len();
            for &y in &self.perm {
                self.current.push(self.lattice.leq(y, x));
                self.current.push(self.lattice.leq(x, y));
            }
            let mut less = already_less || self.best.is_none();
            let mut prune = false;
            if !less {
                let best = self.best.as_ref().unwrap();
                match self.current[start..].cmp(&best[start..self.current.len()]) {
                    std::cmp::Ordering::Less => less = true,
                    std::cmp::Ordering::Greater => prune = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            if !prune {
                self.used[x] = true;
                self.perm.push(x);
                self.run(less);
                self.perm.pop();
                self.used[x] = false;
            }
            self.current.truncate(start);
        }
    }
}

/// Isomorphism-invariant encoding of a lattice's order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    entries: Vec<bool>,
}

/// JSON interchange form: the order is the closure of `leq_pairs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    #[serde(default)]
    pub names: Vec<String>,
    pub leq_pairs: Vec<[usize; 2]>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("n", &self.len())
            .field("names", &self.names())
            .field("covers", &self.covers())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_tables_agree(l: &Lattice) -> bool {
        let n = l.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                Some(l.meet(x, y)) == brute_bound(l.poset(), x, y, false)
                    && Some(l.join(x, y)) == brute_bound(l.poset(), x, y, true)
            })
        })
    }

    #[test]
    fn build_from_order_examples() {
        let c = Lattice::build_from_order(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!((c.bottom(), c.top()), (0, 2));
        let d = Lattice::build_from_order(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(d.is_isomorphic(&Lattice::boolean_cube(2).unwrap()).unwrap());
        let m3 = Lattice::build_from_order(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert!(m3.is_isomorphic(&Lattice::sub_cp_cp(2).unwrap()).unwrap());
    }

    #[test]
    fn build_from_order_errors() {
        assert_eq!(
            Lattice::build_from_order(3, &[(0, 1), (1, 0)]).unwrap_err(),
            Error::CycleDetected(0, 1)
        );
        assert_eq!(
            Lattice::build_from_order(3, &[(0, 2), (1, 2)]).unwrap_err(),
            Error::NotBounded("bottom")
        );
        // 0 < 1,2 < 3,4 < 5: 1 and 2 have two minimal upper bounds.
        let bowtie = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)];
        assert!(matches!(
            Lattice::build_from_order(6, &bowtie).unwrap_err(),
            Error::NotALattice(1, 2, "join")
        ));
        assert_eq!(Lattice::build_from_order(0, &[]).unwrap_err(), Error::NotBounded("bottom"));
    }

    #[test]
    fn family_sizes() {
        assert_eq!(Lattice::chain(0).unwrap().len(), 1);
        let c2 = Lattice::chain(2).unwrap();
        assert_eq!(c2.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(Lattice::chain(3).unwrap().covers().len(), 3);
        assert_eq!(Lattice::boolean_cube(0).unwrap().len(), 1);
        assert_eq!(Lattice::boolean_cube(2).unwrap().len(), 4);
        let cube = Lattice::boolean_cube(3).unwrap();
        assert_eq!((cube.len(), cube.covers().len()), (8, 12));
        assert_eq!(Lattice::sub_cp_cp(2).unwrap().len(), 5);
        assert_eq!(Lattice::sub_cp_cp(3).unwrap().len(), 6);
        assert_eq!(Lattice::sub_cp_cp(5).unwrap().len(), 8);
        assert_eq!(Lattice::sub_cp_cp(4).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(Lattice::boolean_cube(21), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn sub_cp_cp_labels() {
        let l = Lattice::sub_cp_cp(3).unwrap();
        assert_eq!(l.names(), &["e", "H1", "H2", "H3", "H4", "G"]);
        assert_eq!((l.bottom(), l.top()), (0, 5));
    }

    #[test]
    fn tables_match_brute_force() {
        let c2 = Lattice::chain(2).unwrap();
        let c1 = Lattice::chain(1).unwrap();
        let c3 = Lattice::chain(3).unwrap();
        let lattices = [
            c2.clone(),
            Lattice::boolean_cube(3).unwrap(),
            Lattice::product(&c2, &c1).unwrap(),
            Lattice::fusion(&c2, &c3).unwrap(),
            Lattice::iterated_fusion(&c2, 4).unwrap(),
            Lattice::pentagon(),
            Lattice::rectangle(2, 3).unwrap(),
            Lattice::boolean_cube(2).unwrap().dual(),
        ];
        for l in &lattices {
            assert!(brute_tables_agree(l), "{l:?}");
            assert!((0..l.len()).all(|x| l.leq(l.bottom(), x) && l.leq(x, l.top())));
        }
    }

    #[test]
    fn product_examples() {
        let c1 = Lattice::chain(1).unwrap();
        let c0 = Lattice::chain(0).unwrap();
        let c2 = Lattice::chain(2).unwrap();
        let sq = Lattice::product(&c1, &c1).unwrap();
        assert!(sq.is_isomorphic(&Lattice::boolean_cube(2).unwrap()).unwrap());
        assert!(Lattice::product(&c0, &c2).unwrap().is_isomorphic(&c2).unwrap());
        let rect = Lattice::product(&c2, &c1).unwrap();
        assert_eq!(rect.len(), 6);
        assert_eq!(rect.covers().len(), 7);
    }

    #[test]
    fn fusion_examples() {
        let c1 = Lattice::chain(1).unwrap();
        let c2 = Lattice::chain(2).unwrap();
        assert!(Lattice::fusion(&c1, &c1).unwrap().is_isomorphic(&c1).unwrap());
        let c0 = Lattice::chain(0).unwrap();
        assert!(Lattice::fusion(&c0, &c0).unwrap().is_isomorphic(&c1).unwrap());
        assert!(Lattice::fusion(&c0, &c2).unwrap().is_isomorphic(&c2).unwrap());
        let d = Lattice::fusion(&c2, &c2).unwrap();
        assert_eq!(d.len(), 4);
        assert!(!d.leq(1, 2) && !d.leq(2, 1));
        assert!(d.is_isomorphic(&Lattice::boolean_cube(2).unwrap()).unwrap());
        let m3 = Lattice::iterated_fusion(&c2, 3).unwrap();
        let by_pairs = Lattice::fusion(&Lattice::fusion(&c2, &c2).unwrap(), &c2).unwrap();
        assert!(m3.is_isomorphic(&by_pairs).unwrap());
        assert!(Lattice::iterated_fusion(&c2, 1).unwrap().is_isomorphic(&c2).unwrap());
        assert!(Lattice::iterated_fusion(&c2, 0).unwrap().is_isomorphic(&c1).unwrap());
        assert_eq!(Lattice::iterated_fusion(&c2, 4).unwrap().len(), 6);
    }

    #[test]
    fn modularity() {
        assert!(Lattice::boolean_cube(3).unwrap().is_modular());
        assert!(!Lattice::pentagon().is_modular());
        assert!(Lattice::pentagon().has_pentagon_sublattice());
        let c2 = Lattice::chain(2).unwrap();
        for k in 1..=6 {
            assert!(Lattice::iterated_fusion(&c2, k).unwrap().is_modular(), "k={k}");
        }
        // [2] * [3] contains a pentagon: ⊥ < a1 < a2 < ⊤ against the middle of [2].
        let f = Lattice::fusion(&c2, &Lattice::chain(3).unwrap()).unwrap();
        assert!(!f.is_modular());
    }

    #[test]
    fn grading() {
        assert_eq!(Lattice::chain(3).unwrap().grade().unwrap(), vec![0, 1, 2, 3]);
        let cube = Lattice::boolean_cube(3).unwrap();
        let ranks = cube.grade().unwrap();
        assert!((0..8).all(|x| ranks[x] == (x as u32).count_ones() as usize));
        assert!(matches!(Lattice::pentagon().grade(), Err(Error::NotGraded(_))));
        assert!(Lattice::pentagon().rank().is_none());
    }

    #[test]
    fn canonical_form_distinguishes() {
        let c3 = Lattice::chain(3).unwrap();
        let sq = Lattice::boolean_cube(2).unwrap();
        assert!(!c3.is_isomorphic(&sq).unwrap());
        assert_ne!(c3.canonical_form().unwrap(), Lattice::pentagon().canonical_form().unwrap());
        let m5 = Lattice::iterated_fusion(&Lattice::chain(2).unwrap(), 10).unwrap();
        assert!(m5.canonical_form().is_ok());
    }

    #[test]
    fn json_round_trip() {
        let l = Lattice::pentagon();
        let text = serde_json::to_string(&l.to_json()).unwrap();
        let back = Lattice::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn hasse_dot_lists_covers() {
        let dot = Lattice::chain(2).unwrap().hasse_dot();
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("n0 -> n1"));
        assert!(dot.contains("n1 -> n2"));
        assert!(!dot.contains("n0 -> n2"));
    }
}
