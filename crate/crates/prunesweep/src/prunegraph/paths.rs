//! Path queries over the weighted DAGs: maximum-weight paths, path counts,
//! and the parametric search for the smallest sustainable ratio.

use super::{check_graph_width, EdgeColor, WeightedDag};
use crate::bitcase::{prune_value, PruneLevel};
use crate::error::Error;

/// A directed path with the color of every edge along it.
///
/// Colors matter: wherever `P_l(m) = m - 1` the graph holds a blue and a red
/// edge in parallel, and the two stand for different runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPath {
    nodes: Vec<u64>,
    colors: Vec<EdgeColor>,
}

impl ColoredPath {
    pub fn new(nodes: Vec<u64>, colors: Vec<EdgeColor>) -> Result<Self, Error> {
        if nodes.is_empty() {
            return Err(Error::InvalidPath {
                reason: "a path needs at least one node",
            });
        }
        if colors.len() + 1 != nodes.len() {
            return Err(Error::InvalidPath {
                reason: "a path needs exactly one color per edge",
            });
        }
        if !nodes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidPath {
                reason: "path nodes must strictly increase",
            });
        }
        Ok(ColoredPath { nodes, colors })
    }

    pub fn nodes(&self) -> &[u64] {
        &self.nodes
    }

    pub fn colors(&self) -> &[EdgeColor] {
        &self.colors
    }

    pub fn blue_count(&self) -> usize {
        self.colors.iter().filter(|c| **c == EdgeColor::Blue).count()
    }

    pub fn red_count(&self) -> usize {
        self.colors.len() - self.blue_count()
    }

    /// Total weight under a given blue weight; red edges always weigh `+1`.
    pub fn weight(&self, blue_weight: i64) -> i64 {
        self.red_count() as i64 + self.blue_count() as i64 * blue_weight
    }
}

impl std::fmt::Display for ColoredPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, v) in self.nodes.iter().enumerate() {
            if i > 0 {
                let arrow = match self.colors[i - 1] {
                    EdgeColor::Blue => "-b->",
                    EdgeColor::Red => "-r->",
                };
                write!(f, " {arrow} ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A maximum-weight witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathResult {
    pub weight: i64,
    pub path: ColoredPath,
}

/// Outcome of a path query; an absent path is a result, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathOutcome {
    Reached(PathResult),
    Unreachable,
}

impl PathOutcome {
    pub fn weight(&self) -> Option<i64> {
        match self {
            PathOutcome::Reached(r) => Some(r.weight),
            PathOutcome::Unreachable => None,
        }
    }

    pub fn into_reached(self) -> Option<PathResult> {
        match self {
            PathOutcome::Reached(r) => Some(r),
            PathOutcome::Unreachable => None,
        }
    }
}

/// Maximum total weight over all directed `src -> dst` paths, by dynamic
/// programming in ascending node order (numeric order is topological).
///
/// Ties are broken toward the smallest predecessor node, then blue before
/// red, so the witness path is deterministic.
pub fn max_weight_path(g: &WeightedDag, src: u64, dst: u64) -> Result<PathOutcome, Error> {
    let si = g.node_index(src).ok_or(Error::NodeNotInGraph { node: src })?;
    let di = g.node_index(dst).ok_or(Error::NodeNotInGraph { node: dst })?;
    if src == dst {
        return Ok(PathOutcome::Reached(PathResult {
            weight: 0,
            path: ColoredPath::new(vec![src], Vec::new())?,
        }));
    }
    if si > di {
        return Ok(PathOutcome::Unreachable);
    }

    let in_edges = in_edges_by_node(g);
    let mut dp: Vec<Option<i64>> = vec![None; di + 1];
    let mut parent: Vec<Option<(usize, EdgeColor)>> = vec![None; di + 1];
    dp[si] = Some(0);
    for vi in si + 1..=di {
        // In-edges arrive sorted by (src, color); a strict improvement test
        // therefore keeps the smallest predecessor and blue-first on ties.
        let mut best: Option<(i64, usize, EdgeColor)> = None;
        for &(ui, w, color) in &in_edges[vi] {
            if let Some(base) = dp[ui] {
                let cand = base + w;
                if best.is_none_or(|(b, _, _)| cand > b) {
                    best = Some((cand, ui, color));
                }
            }
        }
        if let Some((w, ui, color)) = best {
            dp[vi] = Some(w);
            parent[vi] = Some((ui, color));
        }
    }

    let Some(weight) = dp[di] else {
        return Ok(PathOutcome::Unreachable);
    };
    let mut rev_nodes = vec![g.nodes()[di]];
    let mut rev_colors = Vec::new();
    let mut at = di;
    while at != si {
        let (prev, color) = parent[at].expect("reached nodes have parents");
        rev_colors.push(color);
        rev_nodes.push(g.nodes()[prev]);
        at = prev;
    }
    rev_nodes.reverse();
    rev_colors.reverse();
    Ok(PathOutcome::Reached(PathResult {
        weight,
        path: ColoredPath::new(rev_nodes, rev_colors)?,
    }))
}

/// Number of distinct directed `src -> dst` paths; parallel edges of
/// different colors count as different paths.
pub fn count_paths(g: &WeightedDag, src: u64, dst: u64) -> Result<u128, Error> {
    let si = g.node_index(src).ok_or(Error::NodeNotInGraph { node: src })?;
    let di = g.node_index(dst).ok_or(Error::NodeNotInGraph { node: dst })?;
    if si > di {
        return Ok(0);
    }
    let in_edges = in_edges_by_node(g);
    let mut counts = vec![0u128; di + 1];
    counts[si] = 1;
    for vi in si + 1..=di {
        let mut total = 0u128;
        for &(ui, _, _) in &in_edges[vi] {
            total = total
                .checked_add(counts[ui])
                .ok_or(Error::PathCountOverflow)?;
        }
        counts[vi] = total;
    }
    Ok(counts[di])
}

/// Incoming adjacency per node index, preserving `(src, color)` order.
fn in_edges_by_node(g: &WeightedDag) -> Vec<Vec<(usize, i64, EdgeColor)>> {
    let mut in_edges: Vec<Vec<(usize, i64, EdgeColor)>> = vec![Vec::new(); g.nodes().len()];
    for e in g.edges() {
        let ui = g.node_index(e.src).expect("edge endpoints are nodes");
        let vi = g.node_index(e.dst).expect("edge endpoints are nodes");
        in_edges[vi].push((ui, e.weight, e.color));
    }
    in_edges
}

/// Maximum weight of a `0 -> 2^n - 1` path in the joined graph for width
/// `n`, computed off the pruning function directly without materializing
/// the graph. Agrees with [`max_weight_path`] over [`super::build_joined`].
pub fn joined_max_weight(n: u8, ell: PruneLevel, blue_weight: i64) -> Result<i64, Error> {
    check_graph_width(n)?;
    let top = (1u64 << n) - 1;
    let mut dp = vec![0i64; (top + 1) as usize];
    for m in 1..=top {
        let mut best = dp[(m - 1) as usize].saturating_add(blue_weight);
        if m < top {
            let pruned = prune_value(m, ell);
            best = best.max(dp[pruned as usize].saturating_add(1));
        }
        dp[m as usize] = best;
    }
    Ok(dp[top as usize])
}

/// Smallest integer `f <= f_max` such that the joined graph with blue
/// weight `-(f-1)` has a maximum `0 -> 2^n - 1` path weight of at most
/// zero, i.e. the smallest ratio bound the graph sustains.
///
/// Raising `f` only lowers blue weights, so the maximum path weight is
/// nonincreasing in `f` and a linear scan finds the threshold.
pub fn minimal_f(n: u8, ell: PruneLevel, f_max: u64) -> Result<Option<u64>, Error> {
    if f_max < 2 {
        return Err(Error::SearchCeilingTooSmall { f_max });
    }
    for f in 1..=f_max {
        if joined_max_weight(n, ell, -(f as i64 - 1))? <= 0 {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
