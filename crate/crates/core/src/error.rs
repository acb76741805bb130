use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The structure constants do not describe a commutative, associative,
    /// unital graded ring.
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    /// A class does not have the shape of the ring it is used with.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("unknown basis class `{0}`")]
    UnknownClass(String),

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("twisting class must be homogeneous of degree 1")]
    NonDivisorTwist,

    #[error("operation requires a base of dimension {expected}, found {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("rank mismatch: projectivization has fibre dimension {fiber_dim} but bundle has rank {rank}")]
    RankMismatch { fiber_dim: usize, rank: usize },

    #[error("invalid test configuration: {0}")]
    InvalidInput(String),

    #[error("volume polynomial vanishes identically")]
    DegenerateVolume,

    #[error("closed form requires a rank-one quotient, found rank {0}")]
    UnsupportedRank(usize),

    #[error("closed forms are only available up to order 2, requested {0}")]
    UnsupportedOrder(usize),

    #[error("filtration weights must be strictly decreasing")]
    NonDecreasingWeights,
}
