//! Conceptual clustering over transactional data with relaxed pattern coverage.
//!
//! The pipeline mines k-relaxed frequent patterns from a bitset-encoded
//! transaction database, drops patterns that are redundant because another
//! pattern induces the same k-cover, selects exactly `theta` patterns that
//! partition the database by exact integer optimization, and scores the
//! selected patterns with Shapley-based interpretability measures.
//!
//! Modules follow the pipeline stages:
//!
//! - [`data`]: item universe, transaction database, patterns, covers.
//! - [`miner`]: k-RFP and closed-itemset enumeration.
//! - [`filter`]: one representative pattern per distinct k-cover.
//! - [`solver`]: exact set-partitioning branch and bound plus a brute-force
//!   oracle.
//! - [`explain`]: pattern importance, exact Shapley values, SVV, ACS.
//! - [`harness`]: dataset I/O, pipeline orchestration, F1 scoring, reports.
//!
//! With the default `parallel` feature the hot loops run on rayon; building
//! with `--no-default-features` gives a fully sequential crate with the same
//! results.

pub mod bitset;
pub mod data;
pub mod error;
pub mod explain;
pub mod filter;
pub mod harness;
pub mod miner;
pub mod solver;

pub use bitset::Bitset;
pub use data::{CoverSet, ItemUniverse, Pattern, TransactionDB};
pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
