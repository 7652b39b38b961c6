//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors surfaced by construction, evaluation and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation asked for more digit levels than the period structure provides.
    #[error("depth exhausted: needed level {needed}, structure has {available}")]
    DepthExhausted { needed: usize, available: usize },

    /// A digit fell outside `[0, q_level)`.
    #[error("digit {digit} out of range at level {level} (modulus {modulus})")]
    DigitOutOfRange {
        level: usize,
        digit: u64,
        modulus: u64,
    },

    /// Two odometer elements built over different period structures were combined.
    #[error("mismatched period structures")]
    MismatchedPeriodStructures,

    /// The level-modulus list violates an invariant (parity, growth, minimum size).
    #[error("invalid period structure: {0}")]
    InvalidPeriodStructure(String),

    /// A demonstration requires a fiber certificate the given element cannot provide.
    #[error("certificate missing: {0}")]
    CertificateMissing(String),

    /// Two symbol windows do not cover the same positions.
    #[error("window mismatch: windows must share start and length")]
    WindowMismatch,

    /// A parameter violates an operation precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A config file could not be read or parsed.
    #[error("config error: {0}")]
    Config(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
