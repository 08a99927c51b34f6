//! Error type shared by all modules.

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Operands live in different ambient contexts (rank n, order m, or
    /// characteristic p) or a matrix has the wrong shape for the operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The input matrix is not of the required shape (e.g. not antisymmetric).
    #[error("bad matrix shape: {0}")]
    Shape(String),

    /// The root-of-unity order m must be at least 1.
    #[error("invalid order: m must be >= 1")]
    InvalidOrder,

    /// A parameter value is outside its domain (e.g. a zero scalar where an
    /// invertible one is required).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The field GF(p) has no element of multiplicative order m.
    #[error("GF({p}) contains no root of unity of order {m} (need p = 1 mod m)")]
    NoRootOfUnity { p: u64, m: u64 },

    /// The claimed prime is composite or out of range.
    #[error("invalid prime: {0}")]
    InvalidPrime(u64),

    /// The requested decision procedure is not available for this scalar
    /// domain (e.g. isomorphism testing on formal symbols).
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    /// An internal cross-check failed. This indicates a bug, never bad input.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// The computation would exceed the supported size range.
    #[error("input too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = core::result::Result<T, Error>;
