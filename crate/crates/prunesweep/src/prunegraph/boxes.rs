//! Box decomposition of a block `G_k`: the node intervals whose recursive
//! self-similarity drives the inductive maximum-weight arguments.

use super::{Edge, WeightedDag};
use crate::bitcase::PruneLevel;
use crate::error::Error;

/// Identifier of one box; level 1 uses B1/B2, level 2 uses B1..B4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoxId {
    B1,
    B2,
    B3,
    B4,
}

impl BoxId {
    pub const ALL: [BoxId; 4] = [BoxId::B1, BoxId::B2, BoxId::B3, BoxId::B4];

    pub fn label(self) -> &'static str {
        match self {
            BoxId::B1 => "B1",
            BoxId::B2 => "B2",
            BoxId::B3 => "B3",
            BoxId::B4 => "B4",
        }
    }
}

/// One box: the inclusive node interval `[bottom, top]` (node 0 is part of
/// every box by definition but is carried by the graph, not the range).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxRange {
    pub id: BoxId,
    pub bottom: u64,
    pub top: u64,
}

/// The full decomposition of `G_k` at one prune level.
///
/// Boxes are ordered B1 first (topmost interval); consecutive boxes tile
/// the node range `[2^(k-1)-1, 2^k-1]` with no gaps or overlaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxBounds {
    k: u8,
    level: PruneLevel,
    ranges: Vec<BoxRange>,
}

impl BoxBounds {
    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn level(&self) -> PruneLevel {
        self.level
    }

    pub fn ranges(&self) -> &[BoxRange] {
        &self.ranges
    }

    pub fn range(&self, id: BoxId) -> Option<BoxRange> {
        self.ranges.iter().copied().find(|r| r.id == id)
    }
}

/// Box boundaries for `G_k`: two boxes at level 1 (`k >= 3`), four at
/// level 2 (`k >= 4`). No decomposition is defined for other levels.
pub fn box_bounds(k: u8, ell: PruneLevel) -> Result<BoxBounds, Error> {
    if k > 62 {
        return Err(Error::WidthOutOfRange { width: k, max: 62 });
    }
    let p = |e: u8| 1u64 << e;
    let ranges = match ell.get() {
        1 => {
            if k < 3 {
                return Err(Error::BoxRange {
                    level: 1,
                    k,
                    min: 3,
                });
            }
            vec![
                BoxRange {
                    id: BoxId::B1,
                    bottom: p(k) - p(k - 2) - 1,
                    top: p(k) - 1,
                },
                BoxRange {
                    id: BoxId::B2,
                    bottom: p(k - 1) - 1,
                    top: p(k) - p(k - 2) - 2,
                },
            ]
        }
        2 => {
            if k < 4 {
                return Err(Error::BoxRange {
                    level: 2,
                    k,
                    min: 4,
                });
            }
            vec![
                BoxRange {
                    id: BoxId::B1,
                    bottom: p(k) - p(k - 2) - 1,
                    top: p(k) - 1,
                },
                BoxRange {
                    id: BoxId::B2,
                    bottom: p(k) - p(k - 2) - p(k - 4) - 1,
                    top: p(k) - p(k - 2) - 2,
                },
                BoxRange {
                    id: BoxId::B3,
                    bottom: p(k) - p(k - 2) - p(k - 3) - 1,
                    top: p(k) - p(k - 2) - p(k - 4) - 2,
                },
                BoxRange {
                    id: BoxId::B4,
                    bottom: p(k - 1) - 1,
                    top: p(k) - p(k - 2) - p(k - 3) - 2,
                },
            ]
        }
        level => return Err(Error::BoxesUndefined { level }),
    };
    debug_assert!(ranges
        .windows(2)
        .all(|w| w[1].top + 1 == w[0].bottom), "boxes must tile the interval");
    Ok(BoxBounds {
        k,
        level: ell,
        ranges,
    })
}

/// The induced subgraph of `g` on `{0} U [bottom, top]` of one box: both
/// endpoints of every kept edge lie in that node set.
pub fn induced_box(g: &WeightedDag, bounds: &BoxBounds, which: BoxId) -> Result<WeightedDag, Error> {
    let range = bounds.range(which).ok_or(Error::NoSuchBox {
        which: which.label(),
        level: bounds.level().get(),
    })?;
    let keep = |v: u64| v == 0 || (range.bottom..=range.top).contains(&v);
    let nodes: Vec<u64> = g.nodes().iter().copied().filter(|&v| keep(v)).collect();
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| keep(e.src) && keep(e.dst))
        .collect();
    Ok(WeightedDag::new(
        g.width(),
        g.level(),
        g.blue_weight(),
        nodes,
        edges,
    ))
}
