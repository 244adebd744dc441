//! The weighted two-color graph that reduces counting runs to paths.
//!
//! Nodes are case values. A blue edge `m -> m+1` stands for "case `m+1` had
//! a solution and the sweep decremented"; a red edge `P_l(m) -> m` stands
//! for "case `m` had none and the sweep pruned". Blue edges all carry one
//! caller-chosen weight, red edges carry `+1`; with blue weight `-(f-1)`
//! the weight of a run's path equals its par number at candidate ratio `f`,
//! so the worst-case ratio claim becomes "the maximum weight path is zero".
//!
//! `G_k` is the block covering cases `2^(k-1)-1 ..= 2^k-1` plus node 0; the
//! full graph for width `n` joins `G_2 ..= G_n` and adds the decrement edge
//! into node 1, so that every counting run is a path and vice versa.

mod bijection;
mod boxes;
mod dot;
mod paths;
mod structure;

pub use bijection::{path_to_solution_set, run_to_path};
pub use boxes::{box_bounds, induced_box, BoxBounds, BoxId, BoxRange};
pub use paths::{
    count_paths, joined_max_weight, max_weight_path, minimal_f, ColoredPath, PathOutcome,
    PathResult,
};
pub use structure::{verify_structure, Proposition, StructureCheck};

use crate::bitcase::{prune_value, PruneLevel};
use crate::error::Error;

/// Largest width for which graphs are materialized explicitly
/// (~16M nodes, ~33M edges at the cap).
pub const MAX_GRAPH_WIDTH: u8 = 24;

/// Edge color: blue for decrement steps, red for prune skips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeColor {
    Blue,
    Red,
}

impl EdgeColor {
    pub fn name(self) -> &'static str {
        match self {
            EdgeColor::Blue => "blue",
            EdgeColor::Red => "red",
        }
    }
}

/// A directed weighted edge; sources are always numerically smaller than
/// destinations, which makes node order a topological order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: u64,
    pub dst: u64,
    pub color: EdgeColor,
    pub weight: i64,
}

/// An explicit weighted two-color DAG. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDag {
    width: u8,
    level: PruneLevel,
    blue_weight: i64,
    nodes: Vec<u64>,
    edges: Vec<Edge>,
}

impl WeightedDag {
    fn new(
        width: u8,
        level: PruneLevel,
        blue_weight: i64,
        nodes: Vec<u64>,
        mut edges: Vec<Edge>,
    ) -> Self {
        edges.sort_unstable_by_key(|e| (e.src, e.dst, e.color));
        let g = WeightedDag {
            width,
            level,
            blue_weight,
            nodes,
            edges,
        };
        debug_assert!(g.nodes.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(g.edge_rules_hold());
        g
    }

    /// The `n` or `k` the graph was built for.
    pub fn width(&self) -> u8 {
        self.width
    }

    pub fn level(&self) -> PruneLevel {
        self.level
    }

    pub fn blue_weight(&self) -> i64 {
        self.blue_weight
    }

    /// Nodes in ascending order.
    pub fn nodes(&self) -> &[u64] {
        &self.nodes
    }

    /// Edges sorted by `(src, dst, color)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_node(&self, v: u64) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    pub(crate) fn node_index(&self, v: u64) -> Option<usize> {
        self.nodes.binary_search(&v).ok()
    }

    /// Every edge satisfies the construction rules: `src < dst`, blue edges
    /// connect consecutive nodes with the shared blue weight, red edges have
    /// weight `+1` and source `P_l(dst)`, and node 0 has no incoming edges.
    pub fn edge_rules_hold(&self) -> bool {
        self.edges.iter().all(|e| {
            e.src < e.dst
                && e.dst != 0
                && self.contains_node(e.src)
                && self.contains_node(e.dst)
                && match e.color {
                    EdgeColor::Blue => e.dst == e.src + 1 && e.weight == self.blue_weight,
                    EdgeColor::Red => e.weight == 1 && e.src == prune_value(e.dst, self.level),
                }
        })
    }
}

fn check_graph_width(width: u8) -> Result<(), Error> {
    if width < 2 {
        return Err(Error::WidthTooSmall { width, min: 2 });
    }
    if width > MAX_GRAPH_WIDTH {
        return Err(Error::GraphBudget {
            width,
            max: MAX_GRAPH_WIDTH,
        });
    }
    Ok(())
}

/// The block `G_k`: nodes `{0} U {2^(k-1)-1, ..., 2^k-1}`, a blue edge
/// `m -> m+1` and a red edge `P_l(m) -> m` for every `m` in
/// `2^(k-1)-1 ..= 2^k-2`.
pub fn build_gk(k: u8, ell: PruneLevel, blue_weight: i64) -> Result<WeightedDag, Error> {
    check_graph_width(k)?;
    let lo = (1u64 << (k - 1)) - 1;
    let hi = (1u64 << k) - 1;
    let mut nodes = Vec::with_capacity((hi - lo + 2) as usize);
    nodes.push(0);
    nodes.extend(lo..=hi);
    let mut edges = Vec::with_capacity(2 * (hi - lo) as usize);
    for m in lo..hi {
        edges.push(Edge {
            src: m,
            dst: m + 1,
            color: EdgeColor::Blue,
            weight: blue_weight,
        });
        edges.push(Edge {
            src: prune_value(m, ell),
            dst: m,
            color: EdgeColor::Red,
            weight: 1,
        });
    }
    Ok(WeightedDag::new(k, ell, blue_weight, nodes, edges))
}

/// The joined graph for width `n`: all of `G_2 ..= G_n` over the node set
/// `{0, ..., 2^n-1}`, plus the decrement edge `0 -> 1`.
///
/// Blue edges run `m -> m+1` for `0 <= m < 2^n-1` and red edges run
/// `P_l(m) -> m` for `1 <= m < 2^n-1`. The blue edge into node 1 is not part
/// of any `G_k` but is a real decrement step (a run on a set containing
/// case 1 ends by decrementing it to 0), and it is what makes runs and
/// paths correspond one to one. It never raises the maximum path weight:
/// the parallel red edge dominates it for every blue weight below `+1`.
pub fn build_joined(n: u8, ell: PruneLevel, blue_weight: i64) -> Result<WeightedDag, Error> {
    check_graph_width(n)?;
    let top = (1u64 << n) - 1;
    let nodes: Vec<u64> = (0..=top).collect();
    let mut edges = Vec::with_capacity(2 * top as usize);
    for m in 0..top {
        edges.push(Edge {
            src: m,
            dst: m + 1,
            color: EdgeColor::Blue,
            weight: blue_weight,
        });
    }
    for m in 1..top {
        edges.push(Edge {
            src: prune_value(m, ell),
            dst: m,
            color: EdgeColor::Red,
            weight: 1,
        });
    }
    Ok(WeightedDag::new(n, ell, blue_weight, nodes, edges))
}
