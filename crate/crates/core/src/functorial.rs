//! Pushing transfer systems forward along monotone maps of lattices.

use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeJson};
use crate::transfer::{same_ambient, TransferSystem};

/// A monotone map between lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    source: Arc<Lattice>,
    target: Arc<Lattice>,
    image: Vec<usize>,
    meet_preserving: bool,
}

impl LatticeMap {
    pub fn new(source: &Arc<Lattice>, target: &Arc<Lattice>, image: Vec<usize>) -> Result<Self> {
        let n = source.len();
        if image.len() != n {
            return Err(Error::Invalid(format!("map has {} values for {n} elements", image.len())));
        }
        if let Some(&v) = image.iter().find(|&&v| v >= target.len()) {
            return Err(Error::OutOfRange {
                index: v,
                n: target.len(),
            });
        }
        for x in 0..n {
            for y in 0..n {
                if source.leq(x, y) && !target.leq(image[x], image[y]) {
                    return Err(Error::NotMonotone(x, y));
                }
            }
        }
        let meet_preserving =
            (0..n).all(|x| (0..n).all(|y| image[source.meet(x, y)] == target.meet(image[x], image[y])));
        Ok(LatticeMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            image,
            meet_preserving,
        })
    }

    pub fn identity(lattice: &Arc<Lattice>) -> Self {
        Self::new(lattice, lattice, (0..lattice.len()).collect()).expect("identity")
    }

    pub fn source(&self) -> &Arc<Lattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Lattice> {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `f(x ∧ y) = f(x) ∧ f(y)` for all `x, y`.
    pub fn is_meet_preserving(&self) -> bool {
        self.meet_preserving
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &LatticeMap) -> Result<LatticeMap> {
        if !same_ambient(&self.target, &then.source) {
            return Err(Error::NotComposable);
        }
        let image = self.image.iter().map(|&y| then.image[y]).collect();
        LatticeMap::new(&self.source, &then.target, image)
    }

    pub fn to_json(&self) -> LatticeMapJson {
        LatticeMapJson {
            source: self.source.to_json(),
            target: self.target.to_json(),
            image: self.image.clone(),
        }
    }

    pub fn from_json(json: &LatticeMapJson) -> Result<Self> {
        let source = Arc::new(Lattice::from_json(&json.source)?);
        let target = Arc::new(Lattice::from_json(&json.target)?);
        Self::new(&source, &target, json.image.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMapJson {
    pub source: LatticeJson,
    pub target: LatticeJson,
    pub image: Vec<usize>,
}

/// The system on the target generated by the images of all relations.
pub fn pushforward(f: &LatticeMap, r: &TransferSystem) -> Result<TransferSystem> {
    if !same_ambient(&f.source, r.lattice()) {
        return Err(Error::AmbientMismatch);
    }
    let pairs: Vec<(usize, usize)> = r.pairs().into_iter().map(|(x, y)| (f.apply(x), f.apply(y))).collect();
    TransferSystem::generate(&f.target, &pairs)
}

/// A system on which pushing forward in one step and in two steps differ.
#[derive(Debug, Clone)]
pub struct Discrepancy {
    pub system: TransferSystem,
    /// Pushforward along the composite.
    pub composite: TransferSystem,
    /// Pushforward along `f`, then along `g`.
    pub stepwise: TransferSystem,
}

#[derive(Debug, Clone, Default)]
pub struct FunctorialityReport {
    pub checked: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl FunctorialityReport {
    pub fn holds(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Compares the pushforward along `g ∘ f` with the pushforward along `f`
/// then `g` on each sample system. A discrepancy for a pair of
/// meet-preserving maps is an error.
pub fn check_functoriality(f: &LatticeMap, g: &LatticeMap, sample: &[TransferSystem]) -> Result<FunctorialityReport> {
    let gf = f.then(g)?;
    let mut report = FunctorialityReport::default();
    for r in sample {
        let composite = pushforward(&gf, r)?;
        let stepwise = pushforward(g, &pushforward(f, r)?)?;
        report.checked += 1;
        if composite != stepwise {
            if f.is_meet_preserving() && g.is_meet_preserving() {
                return Err(Error::InvariantViolation(format!(
                    "meet-preserving maps disagree on {r}: {composite} vs {stepwise}"
                )));
            }
            report.discrepancies.push(Discrepancy {
                system: r.clone(),
                composite,
                stepwise,
            });
        }
    }
    Ok(report)
}

/// Two composable maps that do not preserve meets, and a system on the
/// diamond whose two-step pushforward strictly exceeds the one-step one.
///
/// `f` sends the diamond `⊥ < l, r < ⊤` into `b < m < l, r < t` with
/// `⊥ ↦ b`; `g` sends that into the lattice `0 < m₂ < m < l, r < ⊤` with
/// `m ↦ m₂`. The system is `{⊥ R l, r R ⊤}`.
pub fn intermediate_closure_example() -> (LatticeMap, LatticeMap, TransferSystem) {
    let names = |xs: &[&str]| Some(xs.iter().map(|s| s.to_string()).collect());
    let diamond = Arc::new(
        Lattice::build_named(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], names(&["⊥", "l", "r", "⊤"])).unwrap(),
    );
    let middle = Arc::new(
        Lattice::build_named(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)], names(&["b", "m", "l", "r", "t"]))
            .unwrap(),
    );
    let last = Arc::new(
        Lattice::build_named(
            6,
            &[(0, 1), (1, 2), (2, 3), (2, 4), (3, 5), (4, 5)],
            names(&["0", "m2", "m", "l", "r", "⊤"]),
        )
        .unwrap(),
    );
    let f = LatticeMap::new(&diamond, &middle, vec![0, 2, 3, 4]).unwrap();
    let g = LatticeMap::new(&middle, &last, vec![0, 1, 3, 4, 5]).unwrap();
    let r = TransferSystem::validate(&diamond, &[(0, 1), (2, 3)]).unwrap();
    (f, g, r)
}

/// `ψ(R, T)`: `(p, q) ≤ (p', q')` related iff `p R p'` and `q T q'`, on the
/// product lattice built by [`Lattice::product`].
pub fn product_split(r: &TransferSystem, t: &TransferSystem) -> Result<TransferSystem> {
    let product = Arc::new(Lattice::product(r.lattice(), t.lattice())?);
    product_split_on(&product, r, t)
}

/// [`product_split`] onto an existing product lattice.
pub fn product_split_on(product: &Arc<Lattice>, r: &TransferSystem, t: &TransferSystem) -> Result<TransferSystem> {
    let (p, q) = (r.lattice(), t.lattice());
    if **product != Lattice::product(p, q)? {
        return Err(Error::AmbientMismatch);
    }
    let nq = q.len();
    let mut pairs = Vec::new();
    for a in 0..p.len() {
        for a2 in 0..p.len() {
            if !r.relates(a, a2) {
                continue;
            }
            for b in 0..nq {
                for b2 in 0..nq {
                    if t.relates(b, b2) {
                        pairs.push((a * nq + b, a2 * nq + b2));
                    }
                }
            }
        }
    }
    TransferSystem::validate(product, &pairs).map_err(|v| Error::InvariantViolation(v.to_string()))
}

/// Projections of a product lattice onto its factors.
pub fn projections(product: &Arc<Lattice>, p: &Arc<Lattice>, q: &Arc<Lattice>) -> Result<(LatticeMap, LatticeMap)> {
    let nq = q.len();
    let n = product.len();
    let first = LatticeMap::new(product, p, (0..n).map(|x| x / nq).collect())?;
    let second = LatticeMap::new(product, q, (0..n).map(|x| x % nq).collect())?;
    Ok((first, second))
}

/// `φ(S) = (Tr(π_P)(S), Tr(π_Q)(S))`.
pub fn product_restrict(
    s: &TransferSystem,
    p: &Arc<Lattice>,
    q: &Arc<Lattice>,
) -> Result<(TransferSystem, TransferSystem)> {
    let (pi_p, pi_q) = projections(s.lattice(), p, q)?;
    Ok((pushforward(&pi_p, s)?, pushforward(&pi_q, s)?))
}

/// A uniformly random linear extension of the source order, then for each
/// element in that order a uniform choice among the target elements above
/// the images of everything already placed below it.
pub fn random_monotone_map<R: Rng + ?Sized>(source: &Arc<Lattice>, target: &Arc<Lattice>, rng: &mut R) -> LatticeMap {
    let n = source.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order.sort_by_key(|&x| source.poset().height(x));
    let mut image = vec![usize::MAX; n];
    for &x in &order {
        let floor = target.join_all((0..n).filter(|&y| source.lt(y, x)).map(|y| image[y]));
        let choices: Vec<usize> = (0..target.len()).filter(|&z| target.leq(floor, z)).collect();
        image[x] = *choices.choose(rng).expect("the top is always available");
    }
    LatticeMap::new(source, target, image).expect("construction is monotone")
}

/// Samples monotone maps until one preserves meets, up to `attempts` tries.
pub fn random_meet_preserving_map<R: Rng + ?Sized>(
    source: &Arc<Lattice>,
    target: &Arc<Lattice>,
    rng: &mut R,
    attempts: usize,
) -> Option<LatticeMap> {
    (0..attempts)
        .map(|_| random_monotone_map(source, target, rng))
        .find(LatticeMap::is_meet_preserving)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::TrLattice;

    #[test]
    fn identity_pushforward() {
        let l = Arc::new(Lattice::boolean_cube(2).unwrap());
        let id = LatticeMap::identity(&l);
        assert!(id.is_meet_preserving());
        for r in TrLattice::enumerate_all(&l).unwrap().systems() {
            assert_eq!(&pushforward(&id, r).unwrap(), r);
        }
    }

    #[test]
    fn intermediate_closure_adds_relations() {
        let (f, g, r) = intermediate_closure_example();
        assert!(!f.is_meet_preserving() && !g.is_meet_preserving());
        let report = check_functoriality(&f, &g, std::slice::from_ref(&r)).unwrap();
        assert_eq!(report.discrepancies.len(), 1);
        let d = &report.discrepancies[0];
        assert!(d.composite.le(&d.stepwise) && d.composite != d.stepwise);
        assert_eq!(d.composite.pairs(), vec![(0, 1), (0, 2), (0, 3), (2, 3), (4, 5)]);
        assert_eq!(d.stepwise.pairs(), vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)]);
    }

    #[test]
    fn not_composable() {
        let a = Arc::new(Lattice::chain(1).unwrap());
        let b = Arc::new(Lattice::chain(2).unwrap());
        let f = LatticeMap::identity(&a);
        let g = LatticeMap::identity(&b);
        assert_eq!(f.then(&g).unwrap_err(), Error::NotComposable);
    }

    #[test]
    fn product_split_examples() {
        let c1 = Arc::new(Lattice::chain(1).unwrap());
        let full = TransferSystem::complete(&c1);
        let disc = TransferSystem::discrete(&c1);
        let s = product_split(&full, &disc).unwrap();
        // (0,q) R (1,q): indices 0 → 2 and 1 → 3.
        assert_eq!(s.pairs(), vec![(0, 2), (1, 3)]);
        let (r, t) = product_restrict(&s, &c1, &c1).unwrap();
        assert_eq!((r, t), (full.clone(), disc.clone()));
        assert!(product_split(&disc, &disc).unwrap().is_discrete());
        let all = product_split(&full, &full).unwrap();
        assert_eq!(all, TransferSystem::complete(all.lattice()));
    }
}
