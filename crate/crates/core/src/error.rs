use alloc::string::String;

use thiserror::Error;

/// Every fallible operation in the crate reports through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("matrix is not of order dividing {p}: {detail}")]
    NotOrderP { p: u64, detail: String },

    #[error("middle Jordan block N_{q} occurs {count} times; not the reduction of an integral order-p action")]
    MiddleBlocks { q: u32, count: u64 },

    #[error("profiles over different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("bilinear form is degenerate")]
    Degenerate,

    #[error("action is not an isometry of the form")]
    NotIsometry,

    #[error("identity action must be constructed explicitly as trivial")]
    IdentityAction,

    #[error("non-integral pairing {value} between vectors {i} and {j}")]
    NonIntegral { i: usize, j: usize, value: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("unknown lattice name `{0}`")]
    UnknownLattice(String),

    #[error("value out of supported range: {0}")]
    OutOfRange(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
