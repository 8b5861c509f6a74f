use thiserror::Error;

use num_bigint::BigInt;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too small (need p > 3)")]
    PrimeTooSmall(u64),
    #[error("field mismatch: characteristic {left} vs {right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("N_{{{i},{j}}} = {value} is not divisible by p = {p}")]
    NotDivisible { i: i64, j: i64, value: BigInt, p: u32 },
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("algebra axiom violated: {0}")]
    Axiom(String),
    #[error("map is not a derivation: {0}")]
    NotDerivation(String),
    #[error("derivations do not close under commutator: {0}")]
    NotClosed(String),
    #[error("ad of the toral element is not diagonal on basis element {0}")]
    NotDiagonal(usize),
    #[error("cochain is not a cocycle (first failing tuple {tuple:?})")]
    NotCocycle { tuple: Vec<usize> },
    #[error("Jacobi identity fails on basis triple {0:?}")]
    Jacobi((usize, usize, usize)),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{what}: {size} exceeds the budget {budget}; {hint}")]
    Budget { what: String, size: u64, budget: u64, hint: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown claim id `{0}` (see `verify --list`)")]
    UnknownClaim(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
