//! Transfer systems on a finite lattice and the refinement lattice `Tr(P)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{size_check, Error, Result};
use crate::lattice::{escape, Lattice, LatticeJson};
use crate::limits::Limits;
use crate::poset::Poset;
use crate::relation::{self, PairSpace, SearchOptions, Violation};

/// A reflexive, transitive, restriction-closed refinement of the order.
///
/// `rel` is indexed by the pairs `x ≤ y` of the ambient lattice. Values are
/// only constructed through validating or closing paths.
#[derive(Clone)]
pub struct TransferSystem {
    lattice: Arc<Lattice>,
    rel: BitSet,
}

pub(crate) fn same_ambient(a: &Arc<Lattice>, b: &Arc<Lattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl TransferSystem {
    /// Checks `pairs` (non-reflexive pairs may be omitted; reflexive ones are
    /// required only implicitly) against the axioms.
    ///
    /// The diagonal is always added, so a missing reflexive pair is never
    /// reported from here; pass a raw bitset to [`Self::from_bits`] to test
    /// reflexivity too.
    pub fn validate(lattice: &Arc<Lattice>, pairs: &[(usize, usize)]) -> std::result::Result<Self, Violation> {
        let space = lattice.poset().pair_space();
        let mut rel = space.reflexive().clone();
        for &(x, y) in pairs {
            match in_range(lattice, x, y).then(|| space.index(x, y)).flatten() {
                Some(p) => {
                    rel.insert(p);
                }
                None => return Err(Violation::NotRefinement { lower: x, upper: y }),
            }
        }
        Self::from_bits(lattice, rel)
    }

    /// Wraps a raw pair bitset after the direct axiom check.
    pub fn from_bits(lattice: &Arc<Lattice>, rel: BitSet) -> std::result::Result<Self, Violation> {
        let space = lattice.poset().pair_space();
        assert_eq!(rel.capacity(), space.len(), "bitset is not over this lattice's pairs");
        match relation::first_violation(lattice.poset(), space, &rel) {
            Some(v) => Err(v),
            None => Ok(TransferSystem {
                lattice: Arc::clone(lattice),
                rel,
            }),
        }
    }

    pub(crate) fn from_closed(lattice: &Arc<Lattice>, rel: BitSet) -> Self {
        debug_assert!(relation::first_violation(lattice.poset(), lattice.poset().pair_space(), &rel).is_none());
        TransferSystem {
            lattice: Arc::clone(lattice),
            rel,
        }
    }

    /// Least transfer system containing `pairs`.
    ///
    /// Runs three phases in order: reflexive closure, one pass of restriction
    /// closure, then transitive closure. No further restriction pass is
    /// needed; the result is checked against the axioms before returning.
    pub fn generate(lattice: &Arc<Lattice>, pairs: &[(usize, usize)]) -> Result<Self> {
        let l = lattice.as_ref();
        let n = l.len();
        for &(x, y) in pairs {
            if !in_range(l, x, y) || !l.leq(x, y) {
                return Err(Error::NotInOrder(x, y));
            }
        }
        let mut m = vec![false; n * n];
        for x in 0..n {
            m[x * n + x] = true;
        }
        for &(x, y) in pairs {
            for z in 0..n {
                if l.leq(z, y) {
                    m[l.meet(x, z) * n + z] = true;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if m[i * n + k] {
                    for j in 0..n {
                        if m[k * n + j] {
                            m[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let space = l.poset().pair_space();
        let mut rel = space.empty_relation();
        for x in 0..n {
            for y in 0..n {
                if m[x * n + y] {
                    rel.insert(space.index(x, y).expect("generated pairs refine the order"));
                }
            }
        }
        let sys = Self::from_bits(lattice, rel)
            .unwrap_or_else(|v| panic!("three-phase generation produced an invalid relation: {v}"));
        Ok(sys)
    }

    /// Same closure as [`Self::generate`] computed by worklist propagation.
    pub fn generate_incremental(lattice: &Arc<Lattice>, pairs: &[(usize, usize)]) -> Result<Self> {
        let space = lattice.poset().pair_space();
        let seeds = pairs
            .iter()
            .map(|&(x, y)| {
                in_range(lattice, x, y)
                    .then(|| space.index(x, y))
                    .flatten()
                    .ok_or(Error::NotInOrder(x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_closed(lattice, space.closure_of(seeds, false)))
    }

    /// Only the reflexive relations.
    pub fn discrete(lattice: &Arc<Lattice>) -> Self {
        Self::from_closed(lattice, lattice.poset().pair_space().reflexive().clone())
    }

    /// The whole order.
    pub fn complete(lattice: &Arc<Lattice>) -> Self {
        Self::from_closed(lattice, lattice.poset().pair_space().full_relation())
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn bits(&self) -> &BitSet {
        &self.rel
    }

    fn space(&self) -> &PairSpace {
        self.lattice.poset().pair_space()
    }

    pub fn relates(&self, x: usize, y: usize) -> bool {
        self.space().index(x, y).is_some_and(|p| self.rel.contains(p))
    }

    /// Non-reflexive relations, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let space = self.space();
        self.rel.iter().map(|p| space.pair(p)).filter(|(x, y)| x != y).collect()
    }

    /// Number of non-reflexive relations. Never empty as a relation, so
    /// there is no `is_empty`; see [`Self::is_discrete`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.rel.count() - self.lattice.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.len() == 0
    }

    /// `{y : y R x}`.
    pub fn downset(&self, x: usize) -> Vec<usize> {
        (0..self.lattice.len()).filter(|&y| self.relates(y, x)).collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if same_ambient(&self.lattice, &other.lattice) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rel = self.rel.clone();
        rel.intersect_with(&other.rel);
        Ok(Self::from_closed(&self.lattice, rel))
    }

    /// Generated by the union. The union of two transfer systems is already
    /// restriction-closed, so only transitivity may add pairs; this is
    /// asserted.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut union = self.rel.clone();
        union.union_with(&other.rel);
        let joined = Self::generate(&self.lattice, &bits_to_pairs(self.space(), &union))?;
        let n = self.lattice.len();
        let mut m = vec![false; n * n];
        for p in union.iter() {
            let (x, y) = self.space().pair(p);
            m[x * n + y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i * n + k] {
                    for j in 0..n {
                        if m[k * n + j] {
                            m[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let transitive_only = (0..n).all(|x| (0..n).all(|y| m[x * n + y] == joined.relates(x, y)));
        assert!(transitive_only, "join added pairs beyond the transitive closure of the union");
        Ok(joined)
    }

    /// Refinement order: every relation of `self` is one of `other`.
    pub fn le(&self, other: &Self) -> bool {
        self.rel.is_subset(&other.rel)
    }

    /// 2-out-of-3: `x R y ≤ z` and `x R z` imply `y R z`.
    pub fn is_saturated(&self) -> bool {
        self.saturation_witness().is_none()
    }

    /// A triple `(x, y, z)` breaking 2-out-of-3, if any.
    pub fn saturation_witness(&self) -> Option<(usize, usize, usize)> {
        relation::saturation_witness(self.lattice.poset(), self.space(), &self.rel)
    }

    /// Least saturated transfer system above `self`: add every pair demanded
    /// by 2-out-of-3, regenerate, repeat until nothing changes.
    pub fn saturated_hull(&self) -> Self {
        let l = &self.lattice;
        let n = l.len();
        let mut current = self.clone();
        loop {
            let mut extra = Vec::new();
            for (x, y) in current.pairs() {
                for z in 0..n {
                    if l.leq(y, z) && current.relates(x, z) && !current.relates(y, z) {
                        extra.push((y, z));
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            extra.extend(current.pairs());
            current = Self::generate(l, &extra).expect("pairs come from the order");
        }
    }

    /// `χ(⊤)`: the least element related to the top.
    pub fn minimal_fibrant(&self) -> usize {
        let l = &self.lattice;
        let m = l.meet_all(self.downset(l.top()));
        assert!(self.relates(m, l.top()), "downset of the top is not closed under meets");
        m
    }

    /// Induced relation on the lattice minus some of its extremes. `keep`
    /// must be exactly `P` without `⊥`, without `⊤`, or without both (or all
    /// of `P`), in increasing order.
    pub fn restrict_to_subposet(&self, keep: &[usize]) -> Result<SubposetRelation> {
        let l = &self.lattice;
        let (drop_bottom, drop_top) = extremes_dropped(l, keep)?;
        let (poset, kept) = l.delete_extremes(drop_bottom, drop_top);
        let space = poset.pair_space();
        let mut rel = space.empty_relation();
        for (i, &x) in kept.iter().enumerate() {
            for (j, &y) in kept.iter().enumerate() {
                if self.relates(x, y) {
                    rel.insert(space.index(i, j).expect("induced order"));
                }
            }
        }
        Ok(SubposetRelation { poset, kept, rel })
    }

    /// Inverse of restricting to `P ∖ {⊥}` on systems where `⊥` relates to
    /// everything: adds back `⊥ R a` for all `a`.
    pub fn extend_from_bottom(lattice: &Arc<Lattice>, sub: &SubposetRelation) -> Result<Self> {
        let expected: Vec<usize> = (0..lattice.len()).filter(|&x| x != lattice.bottom()).collect();
        if sub.kept != expected {
            return Err(Error::UnsupportedSubposet("expected the lattice without its bottom".into()));
        }
        let b = lattice.bottom();
        let mut pairs: Vec<(usize, usize)> = sub.pairs().into_iter().collect();
        pairs.extend((0..lattice.len()).map(|a| (b, a)));
        let space = lattice.poset().pair_space();
        let mut rel = space.reflexive().clone();
        for (x, y) in pairs {
            rel.insert(space.index(x, y).ok_or(Error::NotInOrder(x, y))?);
        }
        Self::from_bits(lattice, rel).map_err(|v| Error::InvariantViolation(v.to_string()))
    }

    pub fn to_json(&self) -> TransferSystemJson {
        TransferSystemJson {
            lattice: self.lattice.to_json(),
            pairs: self.pairs().into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }

    pub fn from_json(json: &TransferSystemJson) -> Result<Self> {
        let lattice = Arc::new(Lattice::from_json(&json.lattice)?);
        let pairs: Vec<_> = json.pairs.iter().map(|&[x, y]| (x, y)).collect();
        Self::validate(&lattice, &pairs).map_err(|v| Error::Invalid(v.to_string()))
    }

    /// Graphviz drawing with every non-reflexive relation as an upward edge.
    pub fn to_dot(&self) -> String {
        let l = &self.lattice;
        let mut s = String::from("digraph transfer {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for x in 0..l.len() {
            s.push_str(&format!("  n{x} [label=\"{}\"];\n", escape(l.name(x))));
        }
        for (x, y) in self.pairs() {
            s.push_str(&format!("  n{x} -> n{y} [arrowhead=none];\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn in_range(l: &Lattice, x: usize, y: usize) -> bool {
    x < l.len() && y < l.len()
}

fn bits_to_pairs(space: &PairSpace, rel: &BitSet) -> Vec<(usize, usize)> {
    rel.iter().map(|p| space.pair(p)).filter(|(x, y)| x != y).collect()
}

fn extremes_dropped(l: &Lattice, keep: &[usize]) -> Result<(bool, bool)> {
    for (db, dt) in [(false, false), (true, false), (false, true), (true, true)] {
        let expected: Vec<usize> = (0..l.len())
            .filter(|&x| !(db && x == l.bottom()) && !(dt && x == l.top()))
            .collect();
        if expected == keep {
            return Ok((db, dt));
        }
    }
    Err(Error::UnsupportedSubposet(format!(
        "{keep:?} is not the lattice minus some of its extremes"
    )))
}

impl PartialEq for TransferSystem {
    fn eq(&self, other: &Self) -> bool {
        self.rel == other.rel && same_ambient(&self.lattice, &other.lattice)
    }
}

impl Eq for TransferSystem {}

impl PartialOrd for TransferSystem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// Total order for canonical output: by size, then bit pattern.
impl Ord for TransferSystem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rel.cmp(&other.rel)
    }
}

impl std::hash::Hash for TransferSystem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rel.hash(state)
    }
}

impl fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl fmt::Display for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &self.lattice;
        let parts: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(x, y)| format!("{}→{}", l.name(x), l.name(y)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Relation induced on a subposet obtained by deleting extremes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubposetRelation {
    pub poset: Poset,
    /// Original lattice index of each subposet element.
    pub kept: Vec<usize>,
    pub rel: BitSet,
}

impl SubposetRelation {
    /// Non-reflexive relations in original lattice indices.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let space = self.poset.pair_space();
        self.rel
            .iter()
            .map(|p| space.pair(p))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| (self.kept[i], self.kept[j]))
            .collect()
    }

    /// Whether the relation is a transfer system on the subposet under the
    /// maximal-lower-bound form of restriction.
    pub fn is_transfer_system(&self) -> bool {
        relation::first_violation(&self.poset, self.poset.pair_space(), &self.rel).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferSystemJson {
    pub lattice: LatticeJson,
    pub pairs: Vec<[usize; 2]>,
}

/// All transfer systems on a poset (which need not be a lattice), as pair
/// bitsets in canonical order.
pub fn enumerate_on_poset(poset: &Poset, opts: SearchOptions, limits: &Limits) -> Result<Vec<BitSet>> {
    let space = poset.pair_space();
    let cap = if opts.saturated {
        limits.max_saturated_pairs
    } else {
        limits.max_tr_pairs
    };
    size_check("non-reflexive order pairs", space.strict_pairs(), cap)?;
    Ok(relation::enumerate(space, opts))
}

pub fn count_on_poset(poset: &Poset) -> Result<usize> {
    Ok(enumerate_on_poset(poset, SearchOptions::default(), &Limits::default())?.len())
}

/// Transfer systems on `lattice`; `opts.saturated` restricts to saturated
/// ones and uses the larger saturated-search guard.
pub fn enumerate_systems(lattice: &Arc<Lattice>, opts: SearchOptions, limits: &Limits) -> Result<Vec<TransferSystem>> {
    Ok(enumerate_on_poset(lattice.poset(), opts, limits)?
        .into_iter()
        .map(|rel| TransferSystem::from_closed(lattice, rel))
        .collect())
}

pub fn enumerate_saturated(lattice: &Arc<Lattice>) -> Result<Vec<TransferSystem>> {
    enumerate_systems(
        lattice,
        SearchOptions {
            saturated: true,
            jobs: 1,
        },
        &Limits::default(),
    )
}

/// `Tr(P)` with its Hasse diagram. Systems are in canonical order (by size,
/// then bit pattern), so index 0 is the discrete system and the last index
/// the complete one.
#[derive(Clone)]
pub struct TrLattice {
    lattice: Arc<Lattice>,
    systems: Vec<TransferSystem>,
    covers: Vec<(usize, usize)>,
}

impl TrLattice {
    pub fn enumerate_all(lattice: &Arc<Lattice>) -> Result<Self> {
        Self::enumerate_with(lattice, 1, &Limits::default())
    }

    pub fn enumerate_with(lattice: &Arc<Lattice>, jobs: usize, limits: &Limits) -> Result<Self> {
        let systems = enumerate_systems(
            lattice,
            SearchOptions {
                saturated: false,
                jobs,
            },
            limits,
        )?;
        Ok(Self::from_systems(lattice, systems))
    }

    /// Builds the Hasse diagram of an already canonical-ordered family.
    pub(crate) fn from_systems(lattice: &Arc<Lattice>, systems: Vec<TransferSystem>) -> Self {
        let mut covers = Vec::new();
        for i in 0..systems.len() {
            // Candidates come in increasing size, so a superset is minimal
            // exactly when no earlier accepted superset lies inside it.
            let mut accepted: Vec<usize> = Vec::new();
            for j in i + 1..systems.len() {
                if systems[j].rel.count() > systems[i].rel.count()
                    && systems[i].le(&systems[j])
                    && !accepted.iter().any(|&k| systems[k].le(&systems[j]))
                {
                    accepted.push(j);
                }
            }
            covers.extend(accepted.into_iter().map(|j| (i, j)));
        }
        covers.sort_unstable();
        TrLattice {
            lattice: Arc::clone(lattice),
            systems,
            covers,
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn systems(&self) -> &[TransferSystem] {
        &self.systems
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    /// Hasse edges `(lower, upper)` by system index.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, sys: &TransferSystem) -> Option<usize> {
        self.systems.binary_search(sys).ok()
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m = self.systems[i].meet(&self.systems[j]).expect("same ambient");
        self.index_of(&m).expect("meet is enumerated")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let m = self.systems[i].join(&self.systems[j]).expect("same ambient");
        self.index_of(&m).expect("join is enumerated")
    }

    pub fn hasse_dot(&self) -> String {
        let mut s = String::from("digraph tr {\n  rankdir=BT;\n  node [shape=box, fontsize=9];\n");
        for (i, sys) in self.systems.iter().enumerate() {
            s.push_str(&format!("  t{i} [label=\"{}\"];\n", escape(&sys.to_string())));
        }
        for &(a, b) in &self.covers {
            s.push_str(&format!("  t{a} -> t{b} [arrowhead=none];\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for TrLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrLattice")
            .field("systems", &self.systems.len())
            .field("covers", &self.covers.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shared(l: Lattice) -> Arc<Lattice> {
        Arc::new(l)
    }

    #[test]
    fn validate_examples() {
        let c2 = shared(Lattice::chain(2).unwrap());
        assert!(TransferSystem::validate(&c2, &[]).is_ok());
        assert!(TransferSystem::validate(&c2, &[(0, 1), (0, 2), (1, 2)]).is_ok());
        assert_eq!(
            TransferSystem::validate(&c2, &[(0, 2)]).unwrap_err(),
            Violation::NotRestrictionClosed {
                source: (0, 2),
                restrict_to: 1,
                missing: (0, 1)
            }
        );
        assert_eq!(
            TransferSystem::validate(&c2, &[(2, 0)]).unwrap_err(),
            Violation::NotRefinement { lower: 2, upper: 0 }
        );
        assert!(matches!(
            TransferSystem::validate(&c2, &[(0, 1), (1, 2)]).unwrap_err(),
            Violation::NotTransitive { .. }
        ));
        let missing_diag = TransferSystem::from_bits(&c2, c2.poset().pair_space().empty_relation());
        assert_eq!(missing_diag.unwrap_err(), Violation::MissingReflexive { element: 0 });
    }

    #[test]
    fn generate_examples() {
        let c2 = shared(Lattice::chain(2).unwrap());
        assert_eq!(TransferSystem::generate(&c2, &[(0, 2)]).unwrap().pairs(), vec![(0, 1), (0, 2)]);
        assert!(TransferSystem::generate(&c2, &[]).unwrap().is_discrete());
        assert_eq!(TransferSystem::generate(&c2, &[(0, 1)]).unwrap().pairs(), vec![(0, 1)]);
        let sq = shared(Lattice::boolean_cube(2).unwrap());
        let covers = sq.covers().to_vec();
        assert_eq!(TransferSystem::generate(&sq, &covers).unwrap(), TransferSystem::complete(&sq));
        assert_eq!(TransferSystem::generate(&c2, &[(2, 0)]).unwrap_err(), Error::NotInOrder(2, 0));
    }

    #[test]
    fn both_generators_agree() {
        let l = shared(Lattice::boolean_cube(3).unwrap());
        for (x, y) in l.poset().order_pairs().collect::<Vec<_>>() {
            for &(a, b) in l.covers() {
                let seeds = [(x, y), (a, b)];
                assert_eq!(
                    TransferSystem::generate(&l, &seeds).unwrap(),
                    TransferSystem::generate_incremental(&l, &seeds).unwrap()
                );
            }
        }
    }

    #[test]
    fn chain_counts_are_catalan() {
        let expected = [1, 2, 5, 14, 42, 132];
        for (m, &e) in expected.iter().enumerate() {
            let tr = TrLattice::enumerate_all(&shared(Lattice::chain(m).unwrap())).unwrap();
            assert_eq!(tr.len(), e, "[{m}]");
        }
    }

    #[test]
    fn tr_chain_two_is_a_pentagon() {
        let c2 = shared(Lattice::chain(2).unwrap());
        let tr = TrLattice::enumerate_all(&c2).unwrap();
        assert_eq!(tr.len(), 5);
        assert_eq!(tr.covers().len(), 5);
        assert!(tr.systems()[0].is_discrete());
        assert_eq!(tr.systems()[4], TransferSystem::complete(&c2));
        let non_saturated: Vec<_> = tr.systems().iter().filter(|s| !s.is_saturated()).collect();
        assert_eq!(non_saturated.len(), 1);
        assert_eq!(non_saturated[0].pairs(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn meet_and_join_examples() {
        let c2 = shared(Lattice::chain(2).unwrap());
        let a = TransferSystem::generate(&c2, &[(0, 2)]).unwrap();
        let b = TransferSystem::generate(&c2, &[(1, 2)]).unwrap();
        let c = TransferSystem::generate(&c2, &[(0, 1)]).unwrap();
        assert!(a.meet(&b).unwrap().is_discrete());
        assert_eq!(a.meet(&a).unwrap(), a);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(c.join(&b).unwrap(), TransferSystem::complete(&c2));
        let other = shared(Lattice::chain(3).unwrap());
        assert_eq!(
            a.meet(&TransferSystem::discrete(&other)).unwrap_err(),
            Error::AmbientMismatch
        );
    }

    #[test]
    fn saturated_hull_examples() {
        let c2 = shared(Lattice::chain(2).unwrap());
        let a = TransferSystem::generate(&c2, &[(0, 2)]).unwrap();
        assert_eq!(a.saturation_witness(), Some((0, 1, 2)));
        assert_eq!(a.saturated_hull(), TransferSystem::complete(&c2));
        let b = TransferSystem::generate(&c2, &[(1, 2)]).unwrap();
        assert_eq!(b.saturated_hull(), b);
    }

    #[test]
    fn minimal_fibrant_examples() {
        let l = shared(Lattice::sub_cp_cp(2).unwrap());
        assert_eq!(TransferSystem::complete(&l).minimal_fibrant(), 0);
        assert_eq!(TransferSystem::discrete(&l).minimal_fibrant(), 4);
        let m = TransferSystem::generate(&l, &[(2, 4)]).unwrap();
        assert_eq!(m.minimal_fibrant(), 2);
    }

    #[test]
    fn restriction_to_subposets() {
        let c2 = shared(Lattice::chain(2).unwrap());
        let full = TransferSystem::complete(&c2);
        let sub = full.restrict_to_subposet(&[1, 2]).unwrap();
        assert_eq!(sub.pairs(), vec![(1, 2)]);
        assert!(sub.is_transfer_system());
        assert_eq!(TransferSystem::extend_from_bottom(&c2, &sub).unwrap(), full);
        assert!(matches!(
            full.restrict_to_subposet(&[0, 2]),
            Err(Error::UnsupportedSubposet(_))
        ));
    }

    #[test]
    fn json_and_dot() {
        let c2 = shared(Lattice::chain(2).unwrap());
        let a = TransferSystem::generate(&c2, &[(0, 2)]).unwrap();
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = TransferSystem::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.pairs(), a.pairs());
        let dot = a.to_dot();
        assert!(dot.contains("n0 -> n2"));
        assert!(dot.contains("n0 -> n1"));
    }
}
