use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a member of P, delta is undefined there")]
    NotInP(u64),
    #[error("a transposition needs two distinct letters, got ({0}, {0})")]
    DegenerateTransposition(u64),
    #[error("interpolation nodes must be pairwise distinct (node {0} repeated)")]
    DuplicateNode(i64),
    #[error("interpolated coefficient of t^{degree} is {value}, not an integer")]
    NonIntegralCoefficient { degree: usize, value: String },
    #[error("permutation-sum oracle is capped at order {cap}, requested {order}")]
    FactorialCap { order: usize, cap: usize },
    #[error("involution enumeration is capped at {cap} letters, requested {size}")]
    EnumerationCap { size: usize, cap: usize },
    #[error("transposition ({0}, {1}) falls in both classes of a two-class count")]
    OverlappingClasses(u64, u64),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),
    #[error("unknown set `{0}`")]
    UnknownSet(String),
    #[error("bound `{name}` = {value} exceeds the cap {cap}")]
    BoundExceeded {
        name: &'static str,
        value: u64,
        cap: u64,
    },
}
