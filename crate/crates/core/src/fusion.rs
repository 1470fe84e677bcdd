//! Counting transfer systems on fused lattices, and the structure of
//! `Tr([2]^{*n})`.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characteristic::fiber_decomposition_of;
use crate::error::{size_check, Error, Result};
use crate::lattice::{is_prime, Lattice};
use crate::transfer::{count_on_poset, TrLattice, TransferSystem};

/// The four terms of the fusion recursion, grouped by minimal fibrant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionCountBreakdown {
    /// Minimal fibrant `⊤`: `|Tr(P∖⊤)|·|Tr(Q∖⊤)|`.
    pub top_term: u64,
    /// Minimal fibrant `⊥`: `|Tr(P∖⊥)|·|Tr(Q∖⊥)|`.
    pub bottom_term: u64,
    /// `(a, |Tr_a(P)|·|Tr(Q∖{⊥,⊤})|)` for each interior `a` of `P`.
    pub middle_terms_p: Vec<(usize, u64)>,
    /// `(b, |Tr(P∖{⊥,⊤})|·|Tr_b(Q)|)` for each interior `b` of `Q`.
    pub middle_terms_q: Vec<(usize, u64)>,
    pub total: u64,
}

fn count_without(l: &Lattice, bottom: bool, top: bool) -> Result<u64> {
    Ok(count_on_poset(&l.delete_extremes(bottom, top).0)? as u64)
}

/// `|Tr_a(P)|`: systems on `P` whose minimal fibrant is `a`.
pub fn tr_minimal_fibrant_count(lattice: &Arc<Lattice>, a: usize) -> Result<u64> {
    if a >= lattice.len() {
        return Err(Error::OutOfRange {
            index: a,
            n: lattice.len(),
        });
    }
    let tr = TrLattice::enumerate_all(lattice)?;
    Ok(tr.systems().iter().filter(|r| r.minimal_fibrant() == a).count() as u64)
}

/// `|Tr(P * Q)|` from counts on `P`, `Q` and their deleted-extreme
/// subposets, without enumerating the fusion.
pub fn count_tr_fusion(p: &Arc<Lattice>, q: &Arc<Lattice>) -> Result<FusionCountBreakdown> {
    let top_term = count_without(p, false, true)? * count_without(q, false, true)?;
    let bottom_term = count_without(p, true, false)? * count_without(q, true, false)?;
    let inner_p = count_without(p, true, true)?;
    let inner_q = count_without(q, true, true)?;
    let by_fibrant = |l: &Arc<Lattice>| -> Result<Vec<u64>> {
        let mut counts = vec![0u64; l.len()];
        for r in TrLattice::enumerate_all(l)?.systems() {
            counts[r.minimal_fibrant()] += 1;
        }
        Ok(counts)
    };
    let fp = by_fibrant(p)?;
    let fq = by_fibrant(q)?;
    let middle_terms_p: Vec<(usize, u64)> = p.interior().into_iter().map(|a| (a, fp[a] * inner_q)).collect();
    let middle_terms_q: Vec<(usize, u64)> = q.interior().into_iter().map(|b| (b, inner_p * fq[b])).collect();
    let total = top_term
        + bottom_term
        + middle_terms_p.iter().map(|t| t.1).sum::<u64>()
        + middle_terms_q.iter().map(|t| t.1).sum::<u64>();
    Ok(FusionCountBreakdown {
        top_term,
        bottom_term,
        middle_terms_p,
        middle_terms_q,
        total,
    })
}

pub fn catalan(n: u64) -> BigUint {
    // C(k+1) = C(k)·2(2k+1)/(k+2), exact at every step.
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

/// `|Tr([m] * [n])|` in closed form.
///
/// `2·Cat(m)·Cat(n) + D(n)·I(m) + D(m)·I(n)` where `I(k)` counts systems on
/// `[k]` with an interior minimal fibrant (`Cat(k+1) − 2·Cat(k)`, and `0`
/// for `k = 0`) and `D(k) = |Tr([k]∖{⊥,⊤})|` (`Cat(k−1)`, and `1` for
/// `k = 0`).
pub fn count_tr_chain_fusion(m: u64, n: u64) -> BigUint {
    let interior = |k: u64| {
        if k == 0 {
            BigUint::zero()
        } else {
            catalan(k + 1) - catalan(k) * 2u32
        }
    };
    let deleted = |k: u64| if k == 0 { BigUint::one() } else { catalan(k - 1) };
    catalan(m) * catalan(n) * 2u32 + deleted(n) * interior(m) + deleted(m) * interior(n)
}

/// The same expression written uniformly in Catalan numbers with
/// `Cat(−1) = 1`. Wrong when exactly one of `m`, `n` is zero; kept to pin
/// that down.
pub fn chain_fusion_uniform_formula(m: u64, n: u64) -> BigInt {
    let cat = |k: i64| if k < 0 { BigInt::one() } else { BigInt::from(catalan(k as u64)) };
    let (m, n) = (m as i64, n as i64);
    cat(n) * cat(m) * 2 + cat(n - 1) * (cat(m + 1) - cat(m) * 2) + cat(m - 1) * (cat(n + 1) - cat(n) * 2)
}

/// `2^{p+2} + p + 1`, the number of transfer systems on `Sub(C_p × C_p)`.
pub fn tr_rank_two(p: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(tr_iterated_fusion_closed_form(p + 1))
}

/// `2^{n+1} + n = |Tr([2]^{*n})|`.
pub fn tr_iterated_fusion_closed_form(n: u64) -> BigUint {
    (BigUint::one() << (n + 1) as usize) + BigUint::from(n)
}

/// `|Tr([2]^{*n})|` by iterating the fusion recursion, one factor at a time.
pub fn tr_iterated_fusion_by_recursion(n: usize) -> Result<u64> {
    let c2 = Arc::new(Lattice::chain(2)?);
    if n == 0 {
        return Ok(TrLattice::enumerate_all(&Arc::new(Lattice::chain(1)?))?.len() as u64);
    }
    let mut acc = Arc::clone(&c2);
    let mut total = TrLattice::enumerate_all(&acc)?.len() as u64;
    for _ in 1..n {
        total = count_tr_fusion(&acc, &c2)?.total;
        acc = Arc::new(Lattice::fusion(&acc, &c2)?);
    }
    Ok(total)
}

/// `Tr([2]^{*n})` split into the bottom cube, the middle antichain and the
/// top cube.
///
/// Elements of `[2]^{*n}` are `0 = ⊥`, middles `1..=n`, `n+1 = ⊤`. Subsets of
/// middles are bitmasks with bit `a − 1` for middle `a`.
#[derive(Debug, Clone)]
pub struct BMTDecomposition {
    pub n: usize,
    pub tr: TrLattice,
    /// `bottom[s]`: index of the system `{⊥ R a : a ∈ s}`.
    pub bottom: Vec<usize>,
    /// `middle[a − 1]`: index of `{a R ⊤} ∪ {⊥ R b : b ≠ a}`.
    pub middle: Vec<usize>,
    /// `top[s]`: index of all `⊥`-relations plus `{a R ⊤ : a ∈ s}`.
    pub top: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    Bottom(u64),
    Middle(usize),
    Top(u64),
}

/// The block of a system on `[2]^{*n}`, or `None` if it fits none.
pub fn classify(r: &TransferSystem, n: usize) -> Option<Block> {
    let top = n + 1;
    let mut bottom_mask = 0u64;
    let mut fibrant_mask = 0u64;
    let mut bottom_top = false;
    for (x, y) in r.pairs() {
        match (x, y) {
            (0, y) if y == top => bottom_top = true,
            (0, a) => bottom_mask |= 1 << (a - 1),
            (a, y) if y == top => fibrant_mask |= 1 << (a - 1),
            _ => return None,
        }
    }
    let full = (1u64 << n) - 1;
    match (bottom_top, fibrant_mask.count_ones()) {
        (false, 0) => Some(Block::Bottom(bottom_mask)),
        (false, 1) if bottom_mask == full & !fibrant_mask => {
            Some(Block::Middle(fibrant_mask.trailing_zeros() as usize + 1))
        }
        (true, _) if bottom_mask == full => Some(Block::Top(fibrant_mask)),
        _ => None,
    }
}

/// Enumerates `Tr([2]^{*n})`, sorts every system into a block and checks
/// that the Hasse diagram consists of the cube covers inside `B` and `T`
/// plus exactly these cross edges: `B_{all∖a} < M_a < T_{a}` for each
/// middle `a`, and `max B < min T`.
pub fn bmt_decompose(n: usize) -> Result<BMTDecomposition> {
    size_check("fusion factors", n, 16)?;
    if n == 0 {
        return Err(Error::Invalid("the decomposition needs at least one middle element".into()));
    }
    let lattice = Arc::new(Lattice::iterated_fusion(&Lattice::chain(2)?, n)?);
    let tr = TrLattice::enumerate_all(&lattice)?;
    let cube = 1usize << n;
    let mut bottom = vec![usize::MAX; cube];
    let mut middle = vec![usize::MAX; n];
    let mut top = vec![usize::MAX; cube];
    for (i, r) in tr.systems().iter().enumerate() {
        let slot = match classify(r, n).ok_or_else(|| Error::ClassificationGap(r.to_string()))? {
            Block::Bottom(s) => &mut bottom[s as usize],
            Block::Middle(a) => &mut middle[a - 1],
            Block::Top(s) => &mut top[s as usize],
        };
        if *slot != usize::MAX {
            return Err(Error::InvariantViolation(format!("two systems share the block slot of {r}")));
        }
        *slot = i;
    }
    if bottom.iter().chain(&middle).chain(&top).any(|&i| i == usize::MAX) {
        return Err(Error::InvariantViolation("a block slot has no system".into()));
    }
    let dec = BMTDecomposition {
        n,
        tr,
        bottom,
        middle,
        top,
    };
    dec.verify()?;
    Ok(dec)
}

impl BMTDecomposition {
    pub fn b_len(&self) -> usize {
        self.bottom.len()
    }

    pub fn m_len(&self) -> usize {
        self.middle.len()
    }

    pub fn t_len(&self) -> usize {
        self.top.len()
    }

    /// Hasse edges predicted by the block structure, as system indices.
    pub fn expected_covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let full = (1usize << n) - 1;
        let mut edges = Vec::new();
        for s in 0..=full {
            for a in 0..n {
                if s >> a & 1 == 0 {
                    edges.push((self.bottom[s], self.bottom[s | 1 << a]));
                    edges.push((self.top[s], self.top[s | 1 << a]));
                }
            }
        }
        for a in 0..n {
            edges.push((self.bottom[full & !(1 << a)], self.middle[a]));
            edges.push((self.middle[a], self.top[1 << a]));
        }
        edges.push((self.bottom[full], self.top[0]));
        edges.sort_unstable();
        edges
    }

    fn verify(&self) -> Result<()> {
        let systems = self.tr.systems();
        for cube in [&self.bottom, &self.top] {
            for s in 0..cube.len() {
                for t in 0..cube.len() {
                    if systems[cube[s]].le(&systems[cube[t]]) != (s & !t == 0) {
                        return Err(Error::InvariantViolation(format!(
                            "block cube is not order-isomorphic to the Boolean cube at {s:b}, {t:b}"
                        )));
                    }
                }
            }
        }
        if self.expected_covers() != self.tr.covers() {
            return Err(Error::InvariantViolation(
                "Hasse diagram differs from the block prediction".into(),
            ));
        }
        Ok(())
    }
}

/// Fiber census of `χ` over `Tr([2]^{*n})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankTwoFiberReport {
    pub fibers: usize,
    /// Sorted ascending.
    pub fiber_sizes: Vec<usize>,
    pub saturated: usize,
}

/// Checks that every system of `B` and `M` is saturated and alone in its
/// fiber, that `T` is a single fiber, and that there are `2ⁿ + n + 1`
/// saturated systems.
pub fn chi_structure_rank_two(n: usize) -> Result<RankTwoFiberReport> {
    let dec = bmt_decompose(n)?;
    let fibers = fiber_decomposition_of(&dec.tr)?;
    let systems = dec.tr.systems();
    let fiber_of = |i: usize| {
        fibers
            .iter()
            .position(|f| f.members.contains(&systems[i]))
            .expect("every system lies in a fiber")
    };
    for &i in dec.bottom.iter().chain(&dec.middle) {
        let f = &fibers[fiber_of(i)];
        if f.members.len() != 1 || !systems[i].is_saturated() {
            return Err(Error::InvariantViolation(format!(
                "{} is not a saturated singleton fiber",
                systems[i]
            )));
        }
    }
    let t = fiber_of(dec.top[0]);
    if fibers[t].members.len() != dec.top.len() || dec.top.iter().any(|&i| fiber_of(i) != t) {
        return Err(Error::InvariantViolation("the top cube is not one fiber".into()));
    }
    let saturated = systems.iter().filter(|s| s.is_saturated()).count();
    if saturated != (1 << n) + n + 1 {
        return Err(Error::InvariantViolation(format!("{saturated} saturated systems")));
    }
    let mut fiber_sizes: Vec<usize> = fibers.iter().map(|f| f.members.len()).collect();
    fiber_sizes.sort_unstable();
    Ok(RankTwoFiberReport {
        fibers: fibers.len(),
        fiber_sizes,
        saturated,
    })
}
