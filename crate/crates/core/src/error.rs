use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("image array is not a bijection: {0:?}")]
    NotBijection(Vec<u32>),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("{what}: group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded {
        what: &'static str,
        order: u128,
        cap: u128,
    },
    #[error("quotient index {index} exceeds the quotient-degree cap {cap}")]
    QuotientCapExceeded { index: u128, cap: u128 },
    #[error("subgroup is not contained in the ambient group ({0})")]
    NotSubgroup(&'static str),
    #[error("subgroup is not normal ({0})")]
    NotNormal(&'static str),
    #[error("trivial group where a nontrivial one is required ({0})")]
    TrivialInput(&'static str),
    #[error("group is not soluble ({0})")]
    NotSoluble(&'static str),
    #[error("group is not {p}-soluble")]
    NotPSoluble { p: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown group name: {0}")]
    UnknownName(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
