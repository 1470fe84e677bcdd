//! The characteristic function `χ`, interior operators, the fiber structure
//! of `χ` on `Tr(P)`, and the Galois pair between element subsets and
//! transfer systems.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{size_check, Error, Result};
use crate::lattice::Lattice;
use crate::limits::Limits;
use crate::transfer::{TrLattice, TransferSystem};

/// A monotone self-map of a lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneEndomap {
    lattice: Arc<Lattice>,
    image: Vec<usize>,
}

impl MonotoneEndomap {
    pub fn new(lattice: &Arc<Lattice>, image: Vec<usize>) -> Result<Self> {
        let n = lattice.len();
        if image.len() != n {
            return Err(Error::Invalid(format!("map has {} values for {n} elements", image.len())));
        }
        if let Some(&v) = image.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange { index: v, n });
        }
        for x in 0..n {
            for y in 0..n {
                if lattice.leq(x, y) && !lattice.leq(image[x], image[y]) {
                    return Err(Error::NotMonotone(x, y));
                }
            }
        }
        Ok(MonotoneEndomap {
            lattice: Arc::clone(lattice),
            image,
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Pointwise order.
    pub fn le(&self, other: &Self) -> bool {
        self.image
            .iter()
            .zip(&other.image)
            .all(|(&a, &b)| self.lattice.leq(a, b))
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.image.len()).all(|x| self.image[self.image[x]] == self.image[x])
    }

    pub fn is_contractive(&self) -> bool {
        (0..self.image.len()).all(|x| self.lattice.leq(self.image[x], x))
    }
}

impl fmt::Debug for MonotoneEndomap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.image)
    }
}

/// Monotone, idempotent and contractive.
#[derive(Clone, PartialEq, Eq)]
pub struct InteriorOperator(MonotoneEndomap);

impl InteriorOperator {
    pub fn new(lattice: &Arc<Lattice>, image: Vec<usize>) -> Result<Self> {
        Self::try_from(MonotoneEndomap::new(lattice, image)?)
    }

    /// Operator whose fixed points are the join-closed set `fixed` (which
    /// must contain the bottom): `x ↦ ⋁ {s ∈ fixed : s ≤ x}`.
    pub fn from_interior_system(lattice: &Arc<Lattice>, fixed: &[usize]) -> Result<Self> {
        let image = (0..lattice.len())
            .map(|x| lattice.join_all(fixed.iter().copied().filter(|&s| lattice.leq(s, x))))
            .collect();
        let op = Self::new(lattice, image)?;
        let mut fixed_sorted = fixed.to_vec();
        fixed_sorted.sort_unstable();
        fixed_sorted.dedup();
        if op.fixed_points() != fixed_sorted {
            return Err(Error::Invalid("set is not join-closed or misses the bottom".into()));
        }
        Ok(op)
    }

    pub fn map(&self) -> &MonotoneEndomap {
        &self.0
    }

    pub fn image(&self) -> &[usize] {
        &self.0.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0.image[x]
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.0.lattice
    }

    pub fn le(&self, other: &Self) -> bool {
        self.0.le(&other.0)
    }

    /// The interior system: elements fixed by the operator.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.0.image.len()).filter(|&x| self.0.image[x] == x).collect()
    }

    pub fn to_json(&self) -> InteriorOperatorJson {
        InteriorOperatorJson {
            image: self.0.image.clone(),
        }
    }
}

impl TryFrom<MonotoneEndomap> for InteriorOperator {
    type Error = Error;

    fn try_from(map: MonotoneEndomap) -> Result<Self> {
        if !map.is_contractive() {
            return Err(Error::Invalid("map is not contractive".into()));
        }
        if !map.is_idempotent() {
            return Err(Error::Invalid("map is not idempotent".into()));
        }
        Ok(InteriorOperator(map))
    }
}

impl fmt::Debug for InteriorOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interior{:?}", self.0.image)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorOperatorJson {
    pub image: Vec<usize>,
}

/// `χ(x)`: the meet of everything related to `x`, which is itself related
/// to `x`.
pub fn chi(r: &TransferSystem) -> InteriorOperator {
    let l = r.lattice();
    let image = (0..l.len())
        .map(|x| {
            let m = l.meet_all(r.downset(x));
            assert!(r.relates(m, x), "meet of the downset of {x} is not related to {x}");
            m
        })
        .collect();
    InteriorOperator::new(l, image).expect("χ is an interior operator")
}

/// Join-closed subsets containing the bottom, as bitmasks over elements.
///
/// Decides elements in index order. Including `x` in a join-closed `S` adds
/// exactly `{x ∨ s : s ∈ S}`; a branch dies once that hits an excluded
/// element.
pub fn interior_systems(lattice: &Lattice) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    walk_interior_systems(lattice, &mut |s| out.push(s))?;
    out.sort_unstable();
    Ok(out)
}

/// Counts interior systems without materialising them.
pub fn count_interior_operators(lattice: &Lattice) -> Result<u64> {
    let mut count = 0u64;
    walk_interior_systems(lattice, &mut |_| count += 1)?;
    Ok(count)
}

fn walk_interior_systems(lattice: &Lattice, emit: &mut dyn FnMut(u64)) -> Result<()> {
    let n = lattice.len();
    size_check("interior-operator elements", n, Limits::default().max_interior_elements)?;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let start = 1u64 << lattice.bottom();
    walk(lattice, all, start, 0, emit);
    Ok(())
}

fn walk(l: &Lattice, all: u64, set: u64, excluded: u64, emit: &mut dyn FnMut(u64)) {
    let undecided = all & !set & !excluded;
    if undecided == 0 {
        emit(set);
        return;
    }
    let x = undecided.trailing_zeros() as usize;
    let mut grown = set;
    let mut rest = set;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        grown |= 1 << l.join(x, s);
    }
    if grown & excluded == 0 {
        walk(l, all, grown, excluded, emit);
    }
    walk(l, all, set, excluded | 1 << x, emit);
}

/// All interior operators, ordered by image.
pub fn enumerate_interior_operators(lattice: &Arc<Lattice>) -> Result<Vec<InteriorOperator>> {
    let mut ops: Vec<InteriorOperator> = interior_systems(lattice)?
        .into_iter()
        .map(|mask| {
            let fixed: Vec<usize> = (0..lattice.len()).filter(|&x| mask >> x & 1 == 1).collect();
            InteriorOperator::from_interior_system(lattice, &fixed).expect("join-closed set")
        })
        .collect();
    ops.sort_by(|a, b| a.image().cmp(b.image()));
    Ok(ops)
}

/// Whether `χ` maps `Tr(P)` onto the interior operators; returns the size
/// of the image along with the verdict.
pub fn chi_image_check(lattice: &Arc<Lattice>) -> Result<(bool, usize)> {
    let tr = TrLattice::enumerate_all(lattice)?;
    let mut image: Vec<Vec<usize>> = tr.systems().iter().map(|r| chi(r).image().to_vec()).collect();
    image.sort();
    image.dedup();
    let ops: Vec<Vec<usize>> = enumerate_interior_operators(lattice)?
        .into_iter()
        .map(|f| f.image().to_vec())
        .collect();
    Ok((image == ops, image.len()))
}

/// One fiber `χ⁻¹(f)` of the characteristic function.
#[derive(Debug, Clone)]
pub struct ChiFiber {
    pub operator: InteriorOperator,
    pub least: TransferSystem,
    pub greatest: TransferSystem,
    /// Canonical order.
    pub members: Vec<TransferSystem>,
}

impl ChiFiber {
    pub fn report(&self) -> FiberReport {
        FiberReport {
            operator: self.operator.image().to_vec(),
            least_pairs: self.least.pairs().into_iter().map(|(x, y)| [x, y]).collect(),
            greatest_pairs: self.greatest.pairs().into_iter().map(|(x, y)| [x, y]).collect(),
            size: self.members.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub operator: Vec<usize>,
    pub least_pairs: Vec<[usize; 2]>,
    pub greatest_pairs: Vec<[usize; 2]>,
    pub size: usize,
}

/// The system generated by `{(f(y), y)}`; the least element of `χ⁻¹(f)`.
pub fn least_in_fiber(f: &InteriorOperator) -> TransferSystem {
    let pairs: Vec<(usize, usize)> = (0..f.image().len()).map(|y| (f.apply(y), y)).collect();
    TransferSystem::generate(f.lattice(), &pairs).expect("f(y) ≤ y")
}

/// Groups `Tr(P)` by `χ` and checks each fiber: closed under meet and join,
/// greatest element equal to the saturated hull of every member, least
/// element equal to [`least_in_fiber`], and equal to the whole interval
/// between them. Fibers are ordered by operator image.
pub fn fiber_decomposition(lattice: &Arc<Lattice>) -> Result<Vec<ChiFiber>> {
    let tr = TrLattice::enumerate_all(lattice)?;
    fiber_decomposition_of(&tr)
}

pub fn fiber_decomposition_of(tr: &TrLattice) -> Result<Vec<ChiFiber>> {
    let lattice = tr.lattice();
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, r) in tr.systems().iter().enumerate() {
        groups.entry(chi(r).image().to_vec()).or_default().push(i);
    }
    let groups: Vec<(Vec<usize>, Vec<usize>)> = groups.into_iter().collect();
    groups
        .into_par_iter()
        .map(|(image, idx)| check_fiber(tr, lattice, image, idx))
        .collect()
}

fn check_fiber(tr: &TrLattice, lattice: &Arc<Lattice>, image: Vec<usize>, idx: Vec<usize>) -> Result<ChiFiber> {
    let bug = |what: String| Error::InvariantViolation(format!("fiber {image:?}: {what}"));
    let systems = tr.systems();
    let members: Vec<TransferSystem> = idx.iter().map(|&i| systems[i].clone()).collect();
    let operator = InteriorOperator::new(lattice, image.clone())?;
    for a in &members {
        for b in &members {
            for c in [a.meet(b)?, a.join(b)?] {
                if chi(&c).image() != image.as_slice() {
                    return Err(bug(format!("not closed under meet/join: {a} and {b}")));
                }
            }
        }
    }
    let greatest = members.iter().max_by_key(|m| m.bits().count()).cloned().unwrap();
    if !greatest.is_saturated() {
        return Err(bug(format!("greatest member {greatest} is not saturated")));
    }
    for m in &members {
        if !m.le(&greatest) {
            return Err(bug(format!("{m} is not below {greatest}")));
        }
        if m.saturated_hull() != greatest {
            return Err(bug(format!("saturated hull of {m} is not {greatest}")));
        }
    }
    let least = least_in_fiber(&operator);
    if !members.contains(&least) || !members.iter().all(|m| least.le(m)) {
        return Err(bug(format!("{least} is not the least member")));
    }
    let interval = systems.iter().filter(|&s| least.le(s) && s.le(&greatest)).count();
    if interval != members.len() {
        return Err(bug(format!("interval has {interval} systems, fiber has {}", members.len())));
    }
    Ok(ChiFiber {
        operator,
        least,
        greatest,
        members,
    })
}

/// `S ↦ ⟨(x, ⊤) : x ∈ S⟩`.
pub fn galois_f(lattice: &Arc<Lattice>, subset: &[usize]) -> Result<TransferSystem> {
    let pairs: Vec<(usize, usize)> = subset.iter().map(|&x| (x, lattice.top())).collect();
    TransferSystem::generate(lattice, &pairs)
}

/// `R ↦ {x : x R ⊤}`, sorted.
pub fn galois_g(r: &TransferSystem) -> Vec<usize> {
    r.downset(r.lattice().top())
}

/// Contains the top and is closed under binary meets.
pub fn is_moore_family(lattice: &Lattice, subset: &[usize]) -> bool {
    subset.contains(&lattice.top())
        && subset
            .iter()
            .all(|&a| subset.iter().all(|&b| subset.contains(&lattice.meet(a, b))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shared(l: Lattice) -> Arc<Lattice> {
        Arc::new(l)
    }

    #[test]
    fn chi_examples() {
        let c2 = shared(Lattice::chain(2).unwrap());
        assert_eq!(chi(&TransferSystem::complete(&c2)).image(), &[0, 0, 0]);
        assert_eq!(chi(&TransferSystem::discrete(&c2)).image(), &[0, 1, 2]);
        let r = TransferSystem::generate(&c2, &[(0, 2)]).unwrap();
        assert_eq!(chi(&r).image(), &[0, 0, 0]);
    }

    #[test]
    fn interior_counts_on_small_families() {
        for (k, e) in [(0, 1), (1, 2), (2, 7), (3, 61)] {
            assert_eq!(count_interior_operators(&Lattice::boolean_cube(k).unwrap()).unwrap(), e);
        }
        for m in 0..6 {
            let c = shared(Lattice::chain(m).unwrap());
            assert_eq!(enumerate_interior_operators(&c).unwrap().len(), 1 << m);
        }
        let one = shared(Lattice::chain(0).unwrap());
        assert_eq!(enumerate_interior_operators(&one).unwrap()[0].image(), &[0]);
    }

    #[test]
    fn endomap_validation() {
        let c2 = shared(Lattice::chain(2).unwrap());
        assert_eq!(MonotoneEndomap::new(&c2, vec![1, 0, 2]).unwrap_err(), Error::NotMonotone(0, 1));
        assert!(InteriorOperator::new(&c2, vec![0, 2, 2]).is_err());
        assert!(InteriorOperator::new(&c2, vec![0, 0, 1]).is_err());
        assert!(InteriorOperator::new(&c2, vec![0, 0, 2]).is_ok());
    }

    #[test]
    fn chain_two_fibers() {
        let c2 = shared(Lattice::chain(2).unwrap());
        let fibers = fiber_decomposition(&c2).unwrap();
        let mut sizes: Vec<usize> = fibers.iter().map(|f| f.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 2]);
        assert_eq!(chi_image_check(&c2).unwrap(), (true, 4));
    }

    #[test]
    fn galois_examples() {
        let c2 = shared(Lattice::chain(2).unwrap());
        assert!(galois_f(&c2, &[]).unwrap().is_discrete());
        assert_eq!(galois_f(&c2, &[0]).unwrap().pairs(), vec![(0, 1), (0, 2)]);
        let c1 = shared(Lattice::chain(1).unwrap());
        assert_eq!(galois_f(&c1, &[0]).unwrap(), TransferSystem::complete(&c1));
        assert_eq!(galois_g(&TransferSystem::discrete(&c2)), vec![2]);
        assert_eq!(galois_g(&TransferSystem::complete(&c2)), vec![0, 1, 2]);
        let m3 = shared(Lattice::sub_cp_cp(2).unwrap());
        assert_eq!(galois_f(&m3, &[1]).unwrap().pairs(), vec![(0, 2), (0, 3), (1, 4)]);
    }
}
