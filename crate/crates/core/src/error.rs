use alloc::string::String;

/// Errors raised by constructors, estimators and the matrix text format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is rank deficient: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("polynomial division by zero")]
    DivisionByZero,

    #[error("unsupported extension degree m = {0} (supported: 2..=16)")]
    UnsupportedDegree(u32),

    #[error("{n} is not {what}", n = .0, what = if *.0 == 2 { "an odd prime" } else { "prime" })]
    NotOddPrime(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("exhaustive search over 2^{k} codewords exceeds the budget of 2^{budget}")]
    OverBudget { k: usize, budget: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
