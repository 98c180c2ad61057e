//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group order {order} exceeds the enumeration cap of {cap} elements")]
    CapacityExceeded { order: u128, cap: u64 },

    #[error("group order overflows the supported range")]
    OrderOverflow,

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("operation requires a nontrivial group")]
    TrivialGroup,

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u64, right: u64 },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),

    #[error("no field table for order {0}")]
    UnsupportedField(u64),

    #[error("class functions refer to different conjugacy class data")]
    ClassesMismatch,

    #[error("inner product is not a cyclotomic integer")]
    NonIntegralInnerProduct,

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("catalog entry {entry:?}: {message}")]
    Catalog { entry: String, message: String },

    #[error("fingerprint collision between {left:?} and {right:?} not covered by a declared isomorphism")]
    FingerprintCollision { left: String, right: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
