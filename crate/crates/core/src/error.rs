//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: out-of-range masks, mismatched ground sets,
    /// dimension mismatches and the like.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A size budget was exceeded; the computation was not attempted.
    #[error("budget exceeded: {what} requires {requested}, budget allows {allowed}")]
    Budget {
        what: String,
        requested: usize,
        allowed: usize,
    },

    /// A complex failed the d∘d = 0 check. Reports the degree and a basis
    /// element on which the composite is nonzero.
    #[error("d∘d ≠ 0 at degree {degree} on basis element {witness}")]
    NotAComplex { degree: i64, witness: String },

    /// A would-be chain map does not commute with the differentials.
    #[error("chain map fails to commute at degree {degree} on basis element {witness}")]
    NotAChainMap { degree: i64, witness: String },

    /// A short exact sequence check failed.
    #[error("sequence not exact at degree {degree}: {detail}")]
    NotExact { degree: i64, detail: String },

    /// A quasi-isomorphism check failed.
    #[error("not a quasi-isomorphism at degree {degree}: {detail}")]
    NotQuasiIso { degree: i64, detail: String },

    /// A cohomology assertion (concentration, rank) failed.
    #[error("cohomology check failed at degree {degree}: expected rank {expected}, found {found}")]
    CohomologyMismatch {
        degree: i64,
        expected: usize,
        found: usize,
    },
}
