//! Finite lattices, transfer systems and their enumeration.
//!
//! The crate is organised bottom-up: [`poset`] and [`lattice`] provide the
//! ambient orders, [`transfer`] the systems themselves and `Tr(P)`,
//! [`characteristic`] the map `χ` into interior operators, [`matchstick`]
//! saturated covers, [`fusion`] the counting recursion for fused lattices and
//! [`functorial`] pushforwards along lattice maps. [`oracle`] holds slow
//! reference implementations used for cross-checking.

pub mod bitset;
pub mod characteristic;
pub mod error;
pub mod fusion;
pub mod functorial;
pub mod lattice;
pub mod limits;
pub mod matchstick;
pub mod oracle;
pub mod poset;
pub mod relation;
pub mod transfer;

pub use bitset::BitSet;
pub use characteristic::{chi, ChiFiber, InteriorOperator, MonotoneEndomap};
pub use error::{Error, Result};
pub use lattice::{CanonicalForm, CoverPair, Lattice, LatticeJson};
pub use limits::Limits;
pub use matchstick::{CoverViolation, SaturatedCover};
pub use poset::Poset;
pub use relation::{SearchOptions, Violation};
pub use transfer::{TrLattice, TransferSystem};
