//! Finite posets on dense indices `0..n`.
//!
//! A [`Poset`] is the order-theoretic substrate shared by lattices and by the
//! deleted-extreme subposets (`P \ {⊥}`, `P \ {⊤}`, `P \ {⊥, ⊤}`) that show up
//! in the fusion recursion. Those subposets need not have meets, so the
//! relation machinery in [`crate::relation`] works at this level and uses
//! maximal lower bounds wherever a lattice would use the meet.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::relation::PairSpace;

#[derive(Clone)]
pub struct Poset {
    n: usize,
    names: Vec<String>,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
    height: Vec<usize>,
    pair_space: OnceLock<Arc<PairSpace>>,
}

impl Poset {
    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `pairs`. Fails if the closure is not antisymmetric.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)], names: Option<Vec<String>>) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(x, y) in pairs {
            for index in [x, y] {
                if index >= n {
                    return Err(Error::OutOfRange { index, n });
                }
            }
            leq[x * n + y] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if leq[x * n + y] && leq[y * n + x] {
                    return Err(Error::CycleDetected(x, y));
                }
            }
        }
        Ok(Self::from_closed(n, leq, names))
    }

    /// Builds a poset from a full order matrix (`leq[x * n + y]` iff `x ≤ y`),
    /// checking the partial-order axioms.
    pub fn from_matrix(n: usize, leq: Vec<bool>, names: Option<Vec<String>>) -> Result<Self> {
        if leq.len() != n * n {
            return Err(Error::Invalid(format!(
                "order matrix has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        for x in 0..n {
            if !leq[x * n + x] {
                return Err(Error::Invalid(format!("order is not reflexive at {x}")));
            }
            for y in 0..n {
                if x != y && leq[x * n + y] && leq[y * n + x] {
                    return Err(Error::CycleDetected(x, y));
                }
                if leq[x * n + y] {
                    for z in 0..n {
                        if leq[y * n + z] && !leq[x * n + z] {
                            return Err(Error::Invalid(format!(
                                "order is not transitive: {x} <= {y} <= {z}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self::from_closed(n, leq, names))
    }

    fn from_closed(n: usize, leq: Vec<bool>, names: Option<Vec<String>>) -> Self {
        let names = names.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        assert_eq!(names.len(), n, "one name per element");
        let lt = |x: usize, y: usize| x != y && leq[x * n + y];
        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                    covers.push((x, y));
                }
            }
        }
        // Longest chain below each element; processing by down-set size is a
        // linear extension.
        let mut by_size: Vec<usize> = (0..n).collect();
        by_size.sort_by_key(|&x| (0..n).filter(|&z| leq[z * n + x]).count());
        let mut height = vec![0usize; n];
        for &y in &by_size {
            height[y] = covers
                .iter()
                .filter(|&&(_, b)| b == y)
                .map(|&(a, _)| height[a] + 1)
                .max()
                .unwrap_or(0);
        }
        Poset {
            n,
            names,
            leq,
            covers,
            height,
            pair_space: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Hasse edges `(x, y)` with `y` covering `x`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.covers.binary_search(&(x, y)).is_ok()
    }

    /// Length of the longest chain ending at `x`.
    pub fn height(&self, x: usize) -> usize {
        self.height[x]
    }

    pub fn order_matrix(&self) -> &[bool] {
        &self.leq
    }

    /// All pairs `x ≤ y`, including the reflexive ones.
    pub fn order_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |x| (0..self.n).filter(move |&y| self.leq(x, y)).map(move |y| (x, y)))
    }

    pub fn strict_pair_count(&self) -> usize {
        self.leq.iter().filter(|&&b| b).count() - self.n
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| !(0..self.n).any(|z| self.lt(z, x)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| !(0..self.n).any(|z| self.lt(x, z)))
            .collect()
    }

    /// Maximal elements of `{w : w ≤ x, w ≤ z}`. For a lattice this is the
    /// singleton `{x ∧ z}`; in a subposet it may be empty or have several
    /// elements.
    pub fn maximal_lower_bounds(&self, x: usize, z: usize) -> Vec<usize> {
        let lower: Vec<usize> = (0..self.n)
            .filter(|&w| self.leq(w, x) && self.leq(w, z))
            .collect();
        lower
            .iter()
            .copied()
            .filter(|&w| !lower.iter().any(|&v| self.lt(w, v)))
            .collect()
    }

    /// Subposet on `keep` (in the given order), with induced order and names.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let m = keep.len();
        let mut leq = vec![false; m * m];
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                leq[i * m + j] = self.leq(x, y);
            }
        }
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        Poset::from_closed(m, leq, Some(names))
    }

    pub(crate) fn pair_space(&self) -> &Arc<PairSpace> {
        self.pair_space.get_or_init(|| Arc::new(PairSpace::new(self)))
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.leq == other.leq && self.names == other.names
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("names", &self.names)
            .field("covers", &self.covers)
            .finish()
    }
}
