//! The correspondence between counting runs and graph paths: reverse a
//! run's trace and prefix node 0 to get a path, or read the solution set
//! back off a path's blue edges.

use super::{ColoredPath, EdgeColor};
use crate::bitcase::{prune_value, PruneLevel};
use crate::efficiency::{RunOutcome, SolutionSet};
use crate::error::Error;

/// Convert a run into its path: the reversed trace prefixed with 0, each
/// edge blue where the case was in the set and red where it was pruned.
///
/// Fails when the trace is not a path of the joined graph, which happens
/// exactly when the outcome came from a set the sweep would mishandle at
/// the top (an invalid set missing the top case).
pub fn run_to_path(outcome: &RunOutcome, ell: PruneLevel) -> Result<ColoredPath, Error> {
    if outcome.trace.is_empty() {
        return Err(Error::InvalidPath {
            reason: "outcome has an empty trace",
        });
    }
    if outcome.trace.len() != outcome.hits.len() {
        return Err(Error::InvalidPath {
            reason: "trace and verdicts differ in length",
        });
    }
    let n = outcome.trace[0].width();
    if outcome.trace.iter().any(|c| c.width() != n) {
        return Err(Error::InvalidPath {
            reason: "trace mixes case widths",
        });
    }
    let top = (1u64 << n) - 1;
    if outcome.trace[0].value() != top {
        return Err(Error::InvalidPath {
            reason: "trace must start at the top case",
        });
    }
    let level = ell.get();
    for i in 0..outcome.trace.len() {
        let j = outcome.trace[i].value();
        let hit = outcome.hits[i];
        if j == 0 {
            return Err(Error::InvalidPath {
                reason: "case 0 can never be checked",
            });
        }
        if !hit && j == top {
            // A pruned top case jumps straight to 0; the corresponding red
            // edge into the top node does not exist in the graph.
            return Err(Error::InvalidPath {
                reason: "a pruned top case has no graph edge",
            });
        }
        let expected = if hit { j - 1 } else { prune_value(j, ell) };
        let actual = outcome.trace.get(i + 1).map_or(0, |c| c.value());
        if expected != actual {
            return Err(Error::InconsistentTrace {
                level,
                index: i,
                from: j,
                to: actual,
            });
        }
    }

    let mut nodes = Vec::with_capacity(outcome.trace.len() + 1);
    nodes.push(0);
    nodes.extend(outcome.trace.iter().rev().map(|c| c.value()));
    let colors = outcome
        .hits
        .iter()
        .rev()
        .map(|&hit| if hit { EdgeColor::Blue } else { EdgeColor::Red })
        .collect();
    ColoredPath::new(nodes, colors)
}

/// Read the solution set off a `0 -> 2^n - 1` path: the destinations of its
/// blue edges. Inverse of [`run_to_path`] on valid sets.
pub fn path_to_solution_set(
    path: &ColoredPath,
    n: u8,
    ell: PruneLevel,
) -> Result<SolutionSet, Error> {
    if n < 2 {
        return Err(Error::WidthTooSmall { width: n, min: 2 });
    }
    let top = (1u64 << n) - 1;
    if *path.nodes().first().expect("paths are nonempty") != 0 {
        return Err(Error::InvalidPath {
            reason: "path must start at node 0",
        });
    }
    if *path.nodes().last().unwrap() != top {
        return Err(Error::InvalidPath {
            reason: "path must end at the top case",
        });
    }
    let mut members = Vec::new();
    for (step, &color) in path.colors().iter().enumerate() {
        let (src, dst) = (path.nodes()[step], path.nodes()[step + 1]);
        match color {
            EdgeColor::Blue => {
                if dst != src + 1 {
                    return Err(Error::InvalidPath {
                        reason: "a blue step must go to the successor",
                    });
                }
                members.push(dst);
            }
            EdgeColor::Red => {
                if dst == top {
                    return Err(Error::InvalidPath {
                        reason: "no red edge enters the top case",
                    });
                }
                if prune_value(dst, ell) != src {
                    return Err(Error::InvalidPath {
                        reason: "a red step must come from the pruned image",
                    });
                }
            }
        }
    }
    SolutionSet::new(n, members)
}
