//! Finite-group machinery for non-abelian cohomology: twisted wreath
//! products, non-abelian H^1 with the Shapiro bijection, extensions with
//! their Eilenberg-MacLane obstructions, and induction of extensions.
//!
//! Everything operates on explicit multiplication tables at desk scale.
//! All constructors are pure and the resulting values are immutable, so
//! they can be shared freely across threads.

pub mod abelian;
pub mod action;
pub mod cohomology;
pub mod extension;
pub mod group;
pub mod report;
pub mod scenario;
pub mod snf;
pub mod suites;

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("mismatched arguments: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Size knobs for the search routines. These are configuration, not
/// semantics: raising them only admits larger inputs.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest order for which a multiplication table is built.
    pub max_group_order: usize,
    /// Largest group for which the automorphism group is enumerated.
    pub max_aut_input_order: usize,
    /// Largest automorphism group that is materialized as a table.
    pub max_aut_table: usize,
    /// Cap on the backtracking search space (candidate tuples).
    pub max_search_space: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 512,
            max_aut_input_order: 24,
            max_aut_table: 4096,
            max_search_space: 1 << 26,
        }
    }
}
