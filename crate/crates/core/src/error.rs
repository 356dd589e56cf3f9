//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while configuring or running an experiment.
#[derive(Debug, Error)]
pub enum Error {
    /// A problem name that does not appear in the catalog.
    #[error("unknown problem `{0}` (see `list-problems` for the catalog)")]
    UnknownProblem(String),

    /// An instruction name that is not in the registry.
    #[error("unknown instruction `{0}`")]
    UnknownInstruction(String),

    /// A program could not be parsed from its textual form.
    #[error("program parse error: {0}")]
    Parse(String),

    /// The requested selection strategy cannot run on this problem, e.g.
    /// novelty methods on a problem with no defined behavior distance.
    #[error("strategy `{strategy}` is unavailable for problem `{problem}`: {reason}")]
    StrategyUnavailable {
        strategy: String,
        problem: String,
        reason: String,
    },

    /// Distance was requested between behaviors that do not admit one.
    #[error("unsupported behavior distance: {0}")]
    UnsupportedDistance(String),

    /// Behaviors of mismatched shape were compared.
    #[error("behavior shape mismatch: {0}")]
    BehaviorShape(String),

    /// A selection routine was asked to pick from nothing.
    #[error("selection from an empty population")]
    EmptyPopulation,

    /// A configuration value is out of range or inconsistent.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Case files or run artifacts failed to (de)serialize.
    #[error("serialization error: {0}")]
    Serde(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}
