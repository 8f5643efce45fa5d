use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by word, algebra, and expansion operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of generators must lie in 2..=26, got {0}")]
    InvalidGeneratorCount(u32),

    #[error("letter index {index} out of range for {generators} generators")]
    LetterOutOfRange { index: u8, generators: u32 },

    #[error("operands belong to different group algebras (N={left} vs N={right})")]
    SpecMismatch { left: u32, right: u32 },

    #[error("cannot parse word at position {position}: {reason}")]
    Parse { position: usize, reason: String },

    #[error("no coefficient X_{index} in the expansion of G^{power}: {reason}")]
    CoefficientIndex {
        power: usize,
        index: usize,
        reason: &'static str,
    },

    #[error("projected term count {projected} exceeds the configured limit {limit}")]
    TermLimitExceeded { projected: BigUint, limit: u64 },

    #[error("invalid JSON document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
