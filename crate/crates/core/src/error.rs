use thiserror::Error;

use crate::automaton::ValidationError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error(transparent)]
    Validation(#[from] ValidationError),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown fixture `{0}` (expected fig2, wheeler3 or sep:<n>)")]
    UnknownFixture(String),

    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),

    #[error("quotient is not a valid automaton: {0}")]
    QuotientInvalid(ValidationError),

    #[error("relation has {found} elements, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },

    /// Transitivity fails: `(u,v)` and `(v,w)` are present, `(u,w)` is not.
    #[error("not a preorder: ({u},{v}) and ({v},{w}) present but ({u},{w}) missing")]
    NotPreorder { u: usize, v: usize, w: usize },

    #[error("preceding pairs need two distinct states, got ({0},{0})")]
    EqualPair(usize),

    #[error("too large for brute force: {0}")]
    TooLarge(String),

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
