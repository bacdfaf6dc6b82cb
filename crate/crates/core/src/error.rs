use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no bottom level defined")]
    NoBottomLevel,

    #[error("missing bottom level: 0_F must be 1, found {0}")]
    BottomNotSingleton(BigUint),

    #[error("degree exceeds index: k = {k} > n = {n}")]
    DegreeExceedsIndex { n: usize, k: usize },

    #[error("sequence `{name}` is not defined at index {index}")]
    IndexOutOfRange { name: String, index: usize },

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("level size {0} is too large to materialize")]
    LevelTooLarge(BigUint),

    #[error("biadjacency shape error: {0}")]
    Shape(String),

    #[error("invalid vertex <{s},{t}>")]
    InvalidVertex { s: usize, t: usize },

    #[error("level range {first}..={last} is out of bounds")]
    LevelRange { first: usize, last: usize },

    #[error("label {label} out of range 1..={max}")]
    LabelOutOfRange { label: usize, max: usize },

    #[error("natural join conformity error: {0}")]
    Conformity(String),

    #[error("overlap must be nonempty")]
    EmptyOverlap,

    #[error("relation is not a partial order: {0}")]
    NotAnOrder(String),

    #[error("relation domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("volume ratio non-integral, no tiling possible")]
    NonIntegralVolume,

    #[error("exhaustive enumeration cap: {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("not a linear extension: {0}")]
    NotLinearExtension(String),

    #[error("parse error: {0}")]
    Parse(String),
}
