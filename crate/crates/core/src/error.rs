//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors reported by field, polynomial, code and bound operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested characteristic is not a prime.
    #[error("{0} is not a prime")]
    NotPrime(u64),

    /// The field order exceeds the supported cap of 2^31.
    #[error("field GF({p}^{m}) exceeds the 2^31 element cap")]
    FieldTooLarge { p: u64, m: u64 },

    /// The value is not a prime power.
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    /// A root of unity of order `n` does not exist in the field.
    #[error("no element of order {n} in a field of order {q}")]
    NoRootOfUnity { n: u64, q: u64 },

    /// Two fields have different characteristics.
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),

    /// The source field is not a subfield of the target.
    #[error("GF({p}^{a}) is not a subfield of GF({p}^{b})")]
    NotSubfield { p: u32, a: u32, b: u32 },

    /// Objects over different fields were combined.
    #[error("operands live in different fields")]
    FieldMismatch,

    /// Division by the zero polynomial or the zero element.
    #[error("division by zero")]
    DivisionByZero,

    /// Interpolation nodes are not pairwise distinct.
    #[error("duplicate interpolation point")]
    DuplicatePoints,

    /// A modular inverse was requested for non-coprime inputs.
    #[error("inputs are not coprime")]
    NotCoprime,

    /// The co-index shares a factor with the characteristic.
    #[error("gcd(n = {n}, p = {p}) != 1")]
    CoindexNotCoprime { n: usize, p: u32 },

    /// A set of exponents is not closed under multiplication by q.
    #[error("zero set is not closed under multiplication by q")]
    NotCyclotomicClosed,

    /// Exhaustive enumeration would exceed the message budget.
    #[error("exhaustive search needs {needed} messages, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    /// Dimensions of vectors or matrices do not agree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An index lies outside the valid range.
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// A chosen defining set is not contained in the eigenvalue set.
    #[error("defining set {0:?} is not contained in the eigenvalue set")]
    NotEigenvalues(Vec<usize>),

    /// Malformed input data.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// Construction parameters violate the preconditions.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// An internal consistency check failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
