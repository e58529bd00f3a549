use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: S_{left} vs S_{right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{u} is not below {v} in Bruhat order")]
    NotComparable { u: Permutation, v: Permutation },

    #[error("{0} is not an element of the interval")]
    NotInInterval(Permutation),

    #[error("invalid reflection order: {0}")]
    InvalidOrder(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    /// A standard decomposition failed to have a Bruhat minimum.
    #[error("no minimum for standard decomposition {kind} of [{u},{v}]")]
    MissingMinimum {
        kind: &'static str,
        u: Permutation,
        v: Permutation,
    },

    /// `min([z,v] ∩ [x,v])` does not exist.
    #[error("join of {z} and {x} does not exist")]
    MissingJoin { z: Permutation, x: Permutation },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
