use alloc::string::String;
use alloc::vec::Vec;

use crate::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("q must be at least 2 (got {0})")]
    InvalidQ(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("fields with more than 65536 elements are not supported (q = {0})")]
    FieldTooLarge(u64),
    #[error("no built-in irreducible polynomial for q = {0}; supply a modulus")]
    NoBuiltinModulus(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element {0} is not in the field")]
    NotAnElement(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("geometry too large to enumerate ({0} points)")]
    TooLarge(u64),
    #[error("subspace dimension {k} out of range 0..={n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("ambient dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("expected a subspace of dimension {expected}, got {got}")]
    WrongSubspaceDimension { expected: usize, got: usize },
    #[error("weight function has {got} values, geometry has {expected} points")]
    WrongLength { expected: usize, got: usize },
    #[error("weights do not sum to zero (residual {residual})")]
    NotSumZero { residual: Rational },
    #[error("distance index {i} out of range 0..={k}")]
    DistanceOutOfRange { i: usize, k: usize },
    #[error("lemma hypotheses violated: {}", .0.join("; "))]
    Hypothesis(Vec<String>),
    #[error("search budget exceeded: {needed} candidate families, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("ledger record {0} does not replay")]
    LedgerMismatch(u64),
    #[error("unsupported instance: {0}")]
    Unsupported(String),
}
