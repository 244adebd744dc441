//! Worst-case analysis of pruned binary case sweeps.
//!
//! A sweep over the cases `2^n - 1, ..., 1` checks each case against a
//! solution oracle, decrementing after a hit and jumping via a pruning
//! function `P_l` after a miss. This crate provides:
//!
//! - [`bitcase`]: the pruning functions on binary case indices, plus
//!   exhaustive verifiers for the binary-prefix facts the analysis rests on;
//! - [`efficiency`]: the counting sweep `(R, C)`, validity of solution
//!   sets, and brute-force enumeration oracles over all subsets;
//! - [`prunegraph`]: the weighted two-color DAG whose paths are exactly the
//!   sweep's runs, maximum-weight-path queries, the run/path bijection, and
//!   mechanical verification of the graph's recursive structure.
//!
//! Together these reproduce the worst-case bounds mechanically: with
//! pruning level 1 the sweep checks at most `(n+1) * R` cases (ratio
//! `C/R = n + 1`), with level 2 at most `2R` (ratio 2).

pub mod bitcase;
pub mod efficiency;
pub mod prunegraph;

mod error;

pub use bitcase::{CaseIndex, PruneLevel};
pub use efficiency::{ParNumber, Ratio, RunOutcome, SolutionSet};
pub use error::Error;
pub use prunegraph::{BoxBounds, BoxId, ColoredPath, Edge, EdgeColor, WeightedDag};
