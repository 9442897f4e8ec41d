use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty search box for unknown `{0}`")]
    EmptyBox(String),

    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),

    #[error("classes live in different rings ({0} vs {1})")]
    RingMismatch(String, String),

    #[error("degree mismatch: expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: String },

    #[error("unsupported rank {0}")]
    UnsupportedRank(u32),

    #[error("total Chern class is not invertible (degree-0 part is not 1)")]
    NonInvertible,

    #[error("long exact sequence constraints are inconsistent")]
    Inconsistent,

    #[error("problem has {0} unknown slots; exactly one is required")]
    BadUnknowns(usize),

    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),

    #[error("generic rank {0} is too high (at most 2 required)")]
    RankTooHigh(usize),

    #[error("generic rank is {0}, expected 2")]
    RankMismatch(usize),

    #[error("no solution found")]
    NoSolution,

    #[error("{0} solutions found, expected exactly one")]
    NonUnique(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaimId(String),
}

pub type Result<T> = std::result::Result<T, Error>;
