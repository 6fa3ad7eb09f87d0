//! Error type shared by the semantic operations.

use thiserror::Error;

/// Error raised when an operation's precondition on a model is not met.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("model is not input-enabled: state `{state}` does not enable input `{input}`")]
    NotInputEnabled { state: String, input: String },

    #[error("automaton is not input-enabled: location `{location}` does not enable input `{input}`")]
    NotIota { location: String, input: String },

    #[error("alphabets differ: both models must declare identical input and output sets")]
    AlphabetMismatch,

    #[error("clock bounds differ: `{0}` vs `{1}`")]
    BoundMismatch(String, String),

    #[error("bound M must be positive, got `{0}`")]
    NonPositiveBound(String),

    #[error("alphabet already contains a delta label")]
    DeltaInAlphabet,

    #[error("invalid model: {0}")]
    Invalid(String),

    #[error("automaton is not canonic: {0}")]
    NotCanonic(String),

    #[error("automaton is not the lifting of a transition system: {0}")]
    NotLiftImage(String),

    #[error("invalid test case: {0}")]
    InvalidTest(String),
}

/// Joins a violation list into a one-line summary for error messages.
pub(crate) fn summarize(violations: &[String]) -> String {
    violations.join("; ")
}
