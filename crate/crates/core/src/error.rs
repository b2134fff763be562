use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("rank {rank} out of range: there are {total} permutations")]
    RankOutOfRange { rank: u64, total: u64 },

    #[error("cyclic sequence is empty")]
    EmptySequence,

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    Dimension {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("no closed form implemented for k = {k}; use the matrix-tree count")]
    NoClosedForm { k: usize },

    #[error("transition digraph has {vertices} vertices, above the limit of {limit}")]
    TooLarge { vertices: u64, limit: u64 },

    #[error("search budget exceeded ({reason}); at least {lower_bound} tours found")]
    BudgetExceeded {
        reason: String,
        lower_bound: BigUint,
    },
}
