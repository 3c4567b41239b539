use num_bigint::BigInt;
use thiserror::Error;

use crate::rational::ExactRational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("term {index} is zero")]
    ZeroTerm { index: usize },

    /// Index past the end of a finite sequence. This is the "undefined"
    /// outcome, not an arithmetic failure.
    #[error("term {index} is undefined (sequence has {length} terms)")]
    Undefined { index: usize, length: usize },

    #[error("[{n} {k}] is undefined since k > n")]
    KExceedsN { n: usize, k: usize },

    #[error("entry [{n} {k}] = {value} is not an integer")]
    NonIntegral {
        n: usize,
        k: usize,
        value: ExactRational,
    },

    #[error("first term must be 1, got {0}")]
    LeadingTermNotOne(BigInt),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Two independent computations disagreed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for the outcomes that mean "not defined here" rather than
    /// "something went wrong".
    pub fn is_undefined(&self) -> bool {
        matches!(self, Error::Undefined { .. } | Error::KExceedsN { .. })
    }
}
