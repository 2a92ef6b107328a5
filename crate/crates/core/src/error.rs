use thiserror::Error;

/// Failures that calling code can meaningfully react to.
///
/// Shape mismatches, mixed arithmetic modes and similar programming mistakes
/// panic instead; they are bugs in the caller, not recoverable conditions.
#[derive(Debug, Error)]
pub enum Error {
    /// A classification request has provably no admissible deformation or
    /// direction, for example inserting a bosonic Bethe root while growing
    /// the chain.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A spectrum did not have the structure an exact construction relies
    /// on, for example Casimir eigenvalues away from the i(i+1) ladder.
    #[error("unexpected spectrum: {0}")]
    UnexpectedSpectrum(String),

    /// An exact polynomial division left a remainder where the construction
    /// guarantees divisibility.
    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    /// A Bethe equation ratio was evaluated at a zero of its denominator.
    #[error("pole in evaluation: {0}")]
    PoleInEvaluation(String),

    /// Building the requested operator would exceed the dense dimension cap.
    #[error("dimension cap exceeded: needed {needed}, cap {cap}")]
    DimensionCap { needed: usize, cap: usize },

    /// An algebraic identity that a verification suite checks did not hold.
    #[error("identity failed: {0}")]
    IdentityFailed(String),

    /// A linear system that the construction expects to be solvable was not.
    #[error("linear solve failed: {0}")]
    SolveFailed(String),

    /// A model description could not be interpreted.
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
