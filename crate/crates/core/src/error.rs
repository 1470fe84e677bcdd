use thiserror::Error;

use crate::matchstick::CoverViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generating relation has a cycle through elements {0} and {1}")]
    CycleDetected(usize, usize),

    #[error("elements {0} and {1} have no unique {2}")]
    NotALattice(usize, usize, &'static str),

    #[error("order has no global {0}")]
    NotBounded(&'static str),

    #[error("element {index} is out of range for a poset on {n} elements")]
    OutOfRange { index: usize, n: usize },

    #[error("{what} exceeds the size limit ({actual} > {limit})")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("lattice is not graded: {0}")]
    NotGraded(String),

    #[error("lattice is not modular")]
    NotModular,

    #[error("operands live on different lattices")]
    AmbientMismatch,

    #[error("transfer system is not saturated")]
    NotSaturated,

    #[error("unsupported subposet: {0}")]
    UnsupportedSubposet(String),

    #[error("maps are not composable")]
    NotComposable,

    #[error("map is not monotone: {0} <= {1} but their images are not ordered")]
    NotMonotone(usize, usize),

    #[error("({0}, {1}) is not a relation of the ambient order")]
    NotInOrder(usize, usize),

    #[error("invalid saturated cover: {0}")]
    InvalidCover(CoverViolation),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("transfer system fits no block of the decomposition: {0}")]
    ClassificationGap(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<CoverViolation> for Error {
    fn from(v: CoverViolation) -> Self {
        match v {
            CoverViolation::NotModular => Error::NotModular,
            other => Error::InvalidCover(other),
        }
    }
}

pub(crate) fn size_check(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::SizeLimit {
            what,
            actual,
            limit,
        })
    } else {
        Ok(())
    }
}
