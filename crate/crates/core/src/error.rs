//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A token could not be parsed; `position` is the byte offset of the offending token.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A generator index was 0 or exceeded the ambient rank.
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    /// Two operands of a binary operation live in free groups of different rank.
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    /// An enumeration would visit more candidates than the configured cap.
    #[error("search space of {size} words exceeds cap {cap}")]
    SearchSpaceExceeded { size: u64, cap: u64 },

    /// An operation requiring an involution was handed something else.
    #[error("element is not an involution")]
    NotAnInvolution,

    #[error("matrix is not unimodular (determinant {det})")]
    NonUnimodular { det: String },

    #[error("unknown generator symbol `{0}`")]
    UnknownGenerator(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
