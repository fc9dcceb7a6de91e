use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("elements {0} and {1} have no unique least upper bound")]
    NotASemilattice(usize, usize),

    #[error("order relation contains a cycle through element {0}")]
    CyclicRelation(usize),

    #[error("a semilattice needs at least one element")]
    EmptyLattice,

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{what} exceeds the configured limit of {limit}")]
    LimitExceeded { what: &'static str, limit: usize },

    #[error("semilattice is not atomistic")]
    NotAtomistic,

    #[error("join-preserving map is not surjective")]
    NotSurjective,

    #[error("map does not preserve the join of elements {0} and {1}")]
    NotJoinPreserving(usize, usize),

    #[error("map does not send the lcm-semilattice of G_J onto that of G_J'")]
    NotOntoSubsemilattice,

    #[error("element {0} is not meet-irreducible")]
    NotMeetIrreducible(usize),

    #[error("elements {0} and {1} of the proposed antichain are comparable")]
    NotAntichain(usize, usize),

    #[error("exponent overflow")]
    Overflow,

    #[error("generator {0} is not squarefree")]
    NotSquarefree(usize),

    #[error("invalid deformation: generators {i} and {k}, variable {j}")]
    InvalidDeformation { i: usize, k: usize, j: usize },

    #[error("invalid weighting: {0}")]
    InvalidWeighting(String),

    #[error("the module I/J is zero (I = J)")]
    EmptyModule,

    #[error("J is not contained in I: generator {0} of J lies outside I")]
    NotContained(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by a configured resource cap rather than bad input.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. } | Error::Overflow)
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
