//! Error type shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set has {0} elements, maximum is {1}")]
    GroundTooLarge(usize, usize),
    #[error("operation enumerates 2^{0} subsets, maximum ground size is {1}")]
    EnumTooLarge(usize, usize),
    #[error("enumeration budget exceeded: {0} points, maximum is {1}")]
    BudgetExceeded(u64, u64),
    #[error("set {0:b} is not central")]
    NotCentral(u32),
    #[error("set {0:b} is not a flat")]
    NotAFlat(u32),
    #[error("set {0:b} is not a subset of the ground set")]
    NotInGround(u32),
    #[error("element {0} is out of range")]
    BadElement(usize),
    #[error("semimatroid axioms fail: {0}")]
    InvalidSemimatroid(String),
    #[error("matroid rank axioms fail: {0}")]
    InvalidMatroid(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("{0}")]
    InvalidInput(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("denominator of {0} is divisible by {1}")]
    BadReduction(String, u64),
    #[error("operation requires field {0}")]
    WrongField(&'static str),
    #[error("operation requires a central arrangement")]
    NotCentralArrangement,
    #[error("operation requires a loopless family")]
    HasLoops,
    #[error("json: {0}")]
    Json(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
