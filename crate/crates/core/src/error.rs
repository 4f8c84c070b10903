//! Error taxonomy shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),

    #[error("letter {letter} is not a valid signed generator index for rank {rank}")]
    LetterOutOfRange { letter: i32, rank: u32 },

    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: u32, rank: u32 },

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error(
        "no splitting exists: gcd({modulus}, {rank} - 1) = {gcd} != 1; \
         the extension splits only when the modulus is coprime to rank - 1"
    )]
    Coprimality { rank: u32, modulus: u64, gcd: u64 },

    #[error("word lies outside the subgroup: exponent vector {vector:?} is nonzero mod {modulus}")]
    NotInSubgroup { vector: Vec<i64>, modulus: u64 },

    #[error("resource bound exceeded: {what} = {got} > {limit} (raise with OUTFN_MAX_COSETS or --max-cosets where applicable)")]
    ResourceBound {
        what: &'static str,
        got: u64,
        limit: u64,
    },

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("matrix is not an involution: M^2 != I")]
    NotInvolution,

    #[error("element has infinite order")]
    InfiniteOrder,

    #[error("incompatible action: {0}")]
    IncompatibleAction(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
