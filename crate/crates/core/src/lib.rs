//! Genetic programming for program synthesis on a Push-style stack language.
//!
//! The crate is organized around the lifecycle of an evolutionary run:
//!
//! - [`push`] — linear genomes, translation to nested programs, and the
//!   stack interpreter that executes them.
//! - [`problems`] — benchmark problem definitions: test-case generators,
//!   behavior extraction, and error functions.
//! - [`selection`] — parent selection strategies (tournament, lexicase,
//!   novelty search, novelty-lexicase) plus the behavior distances and
//!   archive bookkeeping novelty methods need.
//! - [`evolution`] — the generational engine: initialization, variation
//!   operators, the main loop, post-run simplification and generalization.
//! - [`metrics`] — behavioral diversity, aggregate solution statistics, and
//!   pairwise significance tests for comparing strategies.
//!
//! Every randomized component draws from explicitly seeded streams (see
//! [`rng`]), so a run configuration fully determines its outputs.

pub mod error;
pub mod evolution;
pub mod metrics;
pub mod problems;
pub mod push;
pub mod rng;
pub mod selection;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
