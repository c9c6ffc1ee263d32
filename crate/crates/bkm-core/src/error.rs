//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input matrix violates one of the defining rules; the violated
    /// rule is named in the message.
    #[error("not a BKM Cartan matrix: {0}")]
    RejectNotBkm(String),

    /// A bilinear-form computation was requested but no symmetrizer exists.
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,

    /// A weight difference was expected to be an integer combination of
    /// simple roots but is not.
    #[error("weight difference is not an integral root combination: {0}")]
    NonIntegralDifference(String),

    /// Graded construction would exceed the configured memory budget.
    #[error("cutoff too large for configured budget: {0}")]
    CutoffTooLargeForBudget(String),

    /// A free-Lie-algebra formula was invoked on a non-free configuration.
    #[error("not a free rank-2 configuration: {0}")]
    NotFreeCase(String),

    /// Enumeration of a possibly-infinite solution set requested without a box.
    #[error("solution set may be unbounded; an explicit search box is required")]
    UnboundedWithoutBox,

    /// A classification was invoked on an instance violating its premise.
    #[error("premise fails: {0}")]
    PremiseFails(String),

    /// A tuple passed to a solution-only operation is not a solution.
    #[error("not a solution tuple: {0}")]
    NotASolution(String),

    /// The instance matches none of the closed-form character cases.
    #[error("instance not covered by a closed-form character case: {0}")]
    CaseNotCovered(String),

    /// A proposition's hypothesis does not hold for the given instance.
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),

    /// A weight was required to be dominant integral but is not.
    #[error("weight is not dominant integral: {0}")]
    NotDominant(String),

    /// Malformed input (bad JSON, wrong dimensions, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
