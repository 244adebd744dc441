//! Mechanical verification of the recursive structure of the blocks: each
//! claim states that a box of `G_{k+1}` is a relabeled copy of (part of)
//! `G_k`, up to a small explicit edit at the seam.
//!
//! A claim is checked by materializing both sides — the in-edges of the box
//! interval in `G_{k+1}`, and the relabeled/edited copy built from `G_k` —
//! and comparing the edge multisets exactly. Failures return the symmetric
//! difference.

use super::{box_bounds, build_gk, BoxId, EdgeColor, WeightedDag};
use crate::bitcase::PruneLevel;
use crate::error::Error;

/// An edge stripped to what the structural claims speak about.
pub type EdgeShape = (u64, u64, EdgeColor);

/// The structural claims. B1..B4 relate a box of `G_{k+1}` to a piece of
/// `G_k`; the other two pin down where edges from node 0 and into the top
/// box can go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Proposition {
    /// Top box of `G_{k+1}` is `G_k` shifted, with the seam edges adjusted.
    BoxOne,
    /// Second box of `G_{k+1}` is a shifted copy of the stated piece of `G_k`.
    BoxTwo,
    /// Third box of `G_{k+1}` is the shifted bottom box of `G_k` (level 2).
    BoxThree,
    /// Bottom box of `G_{k+1}` is the shifted bottom piece of `G_k` (level 2).
    BoxFour,
    /// Which nodes receive an edge from node 0.
    ZeroEdges,
    /// Which edges enter the top box from outside it.
    BoxOneEntry,
}

impl Proposition {
    pub const ALL: [Proposition; 6] = [
        Proposition::BoxOne,
        Proposition::BoxTwo,
        Proposition::BoxThree,
        Proposition::BoxFour,
        Proposition::ZeroEdges,
        Proposition::BoxOneEntry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Proposition::BoxOne => "box1",
            Proposition::BoxTwo => "box2",
            Proposition::BoxThree => "box3",
            Proposition::BoxFour => "box4",
            Proposition::ZeroEdges => "zero-edges",
            Proposition::BoxOneEntry => "box1-entry",
        }
    }

    /// Smallest `k` the claim is stated for at the given level; `None` when
    /// the claim does not exist at that level.
    pub fn min_k(self, ell: PruneLevel) -> Option<u8> {
        match (ell.get(), self) {
            (1, Proposition::BoxOne | Proposition::BoxTwo | Proposition::ZeroEdges) => Some(2),
            (1, Proposition::BoxOneEntry) => Some(3),
            (1, _) => None,
            (2, Proposition::BoxOne) => Some(3),
            (2, _) => Some(4),
            _ => None,
        }
    }
}

impl std::fmt::Display for Proposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of checking one claim at one `k`: empty diffs mean it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCheck {
    pub k: u8,
    pub level: PruneLevel,
    pub rule: Proposition,
    /// Expected by the claim but absent from the graph.
    pub missing: Vec<EdgeShape>,
    /// Present in the graph but not predicted by the claim.
    pub unexpected: Vec<EdgeShape>,
}

impl StructureCheck {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

/// Blue weight used when materializing both sides; the claims are about
/// shape, and building both sides with one weight keeps weights out of it.
const STRUCTURE_BLUE_WEIGHT: i64 = -1;

/// Check one structural claim at block index `k`.
pub fn verify_structure(
    k: u8,
    ell: PruneLevel,
    rule: Proposition,
) -> Result<StructureCheck, Error> {
    let min = rule.min_k(ell).ok_or(Error::RuleLevelMismatch {
        rule: rule.name(),
        level: ell.get(),
    })?;
    if k < min {
        return Err(Error::RuleRange {
            rule: rule.name(),
            level: ell.get(),
            k,
            min,
        });
    }
    let (built, claimed) = match (ell.get(), rule) {
        (1, Proposition::BoxOne) => box_one_level_one(k)?,
        (1, Proposition::BoxTwo) => box_two_level_one(k)?,
        (1, Proposition::ZeroEdges) => zero_edges_level_one(k)?,
        (1, Proposition::BoxOneEntry) => box_one_entry(k, ell)?,
        (2, Proposition::BoxOne) => box_one_level_two(k)?,
        (2, Proposition::BoxTwo) => box_two_level_two(k)?,
        (2, Proposition::BoxThree) => box_three_level_two(k)?,
        (2, Proposition::BoxFour) => box_four_level_two(k)?,
        (2, Proposition::ZeroEdges) => zero_edges_level_two(k)?,
        (2, Proposition::BoxOneEntry) => box_one_entry(k, ell)?,
        _ => unreachable!("min_k filtered unsupported combinations"),
    };
    let (missing, unexpected) = multiset_diff(built, claimed);
    Ok(StructureCheck {
        k,
        level: ell,
        rule,
        missing,
        unexpected,
    })
}

/// All edges of `g` whose destination lies in `[lo, hi]` — the interior of
/// the interval plus its seam edges from outside.
fn in_edges(g: &WeightedDag, lo: u64, hi: u64) -> Vec<EdgeShape> {
    g.edges()
        .iter()
        .filter(|e| (lo..=hi).contains(&e.dst))
        .map(|e| (e.src, e.dst, e.color))
        .collect()
}

fn shift_nonzero(edges: &[EdgeShape], shift: u64) -> Vec<EdgeShape> {
    edges
        .iter()
        .map(|&(s, d, c)| (if s == 0 { 0 } else { s + shift }, d + shift, c))
        .collect()
}

fn remove_one(edges: &mut Vec<EdgeShape>, target: EdgeShape) {
    // A claim edit that finds nothing to remove simply leaves the lists to
    // disagree; the diff will surface it.
    if let Some(pos) = edges.iter().position(|&e| e == target) {
        edges.remove(pos);
    }
}

/// Top box of `G_{k+1}` vs `G_k` shifted by `2^k`, where the bottom node of
/// the copy takes a blue edge from below and a red edge from the second box
/// in place of its edge from 0.
fn box_one_level_one(k: u8) -> Result<(Vec<EdgeShape>, Vec<EdgeShape>), Error> {
    let ell = PruneLevel::ONE;
    let next = build_gk(k + 1, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bounds = box_bounds(k + 1, ell)?;
    let b1 = bounds.range(BoxId::B1).expect("level 1 has B1");
    let b2 = bounds.range(BoxId::B2).expect("level 1 has B2");
    let built = in_edges(&next, b1.bottom, b1.top);

    let prev = build_gk(k, ell, STRUCTURE_BLUE_WEIGHT)?;
    let all: Vec<EdgeShape> = prev
        .edges()
        .iter()
        .map(|e| (e.src, e.dst, e.color))
        .collect();
    let mut claimed = shift_nonzero(&all, 1 << k);
    remove_one(&mut claimed, (0, b1.bottom, EdgeColor::Red));
    claimed.push((b2.top, b1.bottom, EdgeColor::Blue));
    claimed.push((b2.bottom, b1.bottom, EdgeColor::Red));
    Ok((built, claimed))
}

/// Second box of `G_{k+1}` vs `G_k` without its top node, shifted by
/// `2^(k-1)`.
fn box_two_level_one(k: u8) -> Result<(Vec<EdgeShape>, Vec<EdgeShape>), Error> {
    let ell = PruneLevel::ONE;
    let next = build_gk(k + 1, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bounds = box_bounds(k + 1, ell)?;
    let b2 = bounds.range(BoxId::B2).expect("level 1 has B2");
    let built = in_edges(&next, b2.bottom, b2.top);

    let prev = build_gk(k, ell, STRUCTURE_BLUE_WEIGHT)?;
    let top = (1u64 << k) - 1;
    let without_top: Vec<EdgeShape> = prev
        .edges()
        .iter()
        .filter(|e| e.src != top && e.dst != top)
        .map(|e| (e.src, e.dst, e.color))
        .collect();
    let claimed = shift_nonzero(&without_top, 1 << (k - 1));
    Ok((built, claimed))
}

/// The only edge from node 0 in `G_k` goes to the bottom node (level 1).
fn zero_edges_level_one(k: u8) -> Result<(Vec<EdgeShape>, Vec<EdgeShape>), Error> {
    let g = build_gk(k, PruneLevel::ONE, STRUCTURE_BLUE_WEIGHT)?;
    let built: Vec<EdgeShape> = g
        .edges()
        .iter()
        .filter(|e| e.src == 0)
        .map(|e| (e.src, e.dst, e.color))
        .collect();
    let claimed = vec![(0, (1u64 << (k - 1)) - 1, EdgeColor::Red)];
    Ok((built, claimed))
}

/// Edges entering the top box of `G_k` from outside it: two at level 1
/// (a blue and a red, both into the box bottom), one at level 2 (the blue).
fn box_one_entry(k: u8, ell: PruneLevel) -> Result<(Vec<EdgeShape>, Vec<EdgeShape>), Error> {
    let g = build_gk(k, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bounds = box_bounds(k, ell)?;
    let b1 = bounds.range(BoxId::B1).expect("B1 always exists");
    // Node 0 belongs to the box, so its edges do not count as entries.
    let built: Vec<EdgeShape> = g
        .edges()
        .iter()
        .filter(|e| {
            (b1.bottom..=b1.top).contains(&e.dst)
                && e.src != 0
                && !(b1.bottom..=b1.top).contains(&e.src)
        })
        .map(|e| (e.src, e.dst, e.color))
        .collect();
    let second_top = b1.bottom - 1;
    let claimed = match ell.get() {
        1 => {
            let b2 = bounds.range(BoxId::B2).expect("level 1 has B2");
            vec![
                (second_top, b1.bottom, EdgeColor::Blue),
                (b2.bottom, b1.bottom, EdgeColor::Red),
            ]
        }
        _ => vec![(second_top, b1.bottom, EdgeColor::Blue)],
    };
    Ok((built, claimed))
}

/// Top box of `G_{k+1}` vs `G_k` shifted by `2^k`, plus the seam blue edge
/// into the box bottom (level 2 keeps the copied edge from 0).
fn box_one_level_two(k: u8) -> Result<(Vec<EdgeShape>, Vec<EdgeShape>), Error> {
    let ell = PruneLevel::TWO;
    let next = build_gk(k + 1, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bounds = box_bounds(k + 1, ell)?;
    let b1 = bounds.range(BoxId::B1).expect("B1 always exists");
    let b2 = bounds.range(BoxId::B2).expect("level 2 has B2");
    let built = in_edges(&next, b1.bottom, b1.top);

    let prev = build_gk(k, ell, STRUCTURE_BLUE_WEIGHT)?;
    let all: Vec<EdgeShape> = prev
        .edges()
        .iter()
        .map(|e| (e.src, e.dst, e.color))
        .collect();
    let mut claimed = shift_nonzero(&all, 1 << k);
    claimed.push((b2.top, b1.bottom, EdgeColor::Blue));
    Ok((built, claimed))
}

/// Second box of `G_{k+1}` vs boxes two and three of `G_k`: interval nodes
/// (and the blue seam source just below them) move up by `3 * 2^(k-2)`, the
/// bottom node of `G_k` moves up by `2^(k-1)`.
fn box_two_level_two(k: u8) -> Result<(Vec<EdgeShape>, Vec<EdgeShape>), Error> {
    let ell = PruneLevel::TWO;
    let next = build_gk(k + 1, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bn = box_bounds(k + 1, ell)?;
    let b2n = bn.range(BoxId::B2).expect("level 2 has B2");
    let built = in_edges(&next, b2n.bottom, b2n.top);

    let prev = build_gk(k, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bp = box_bounds(k, ell)?;
    let b2p = bp.range(BoxId::B2).expect("level 2 has B2");
    let b3p = bp.range(BoxId::B3).expect("level 2 has B3");
    let b4p = bp.range(BoxId::B4).expect("level 2 has B4");
    let up = 3u64 << (k - 2);
    let half = 1u64 << (k - 1);
    let relabel = |m: u64| {
        if (b3p.bottom - 1..=b2p.top).contains(&m) {
            m + up
        } else if m == b4p.bottom {
            m + half
        } else {
            m // 0 stays; anything else would surface in the diff
        }
    };
    let claimed: Vec<EdgeShape> = in_edges(&prev, b3p.bottom, b2p.top)
        .into_iter()
        .map(|(s, d, c)| (relabel(s), relabel(d), c))
        .collect();
    Ok((built, claimed))
}

/// Third box of `G_{k+1}` vs the bottom box of `G_k` shifted by
/// `3 * 2^(k-2)`, with the copied edge from 0 replaced by one from the new
/// bottom node and a new blue seam edge.
fn box_three_level_two(k: u8) -> Result<(Vec<EdgeShape>, Vec<EdgeShape>), Error> {
    let ell = PruneLevel::TWO;
    let next = build_gk(k + 1, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bn = box_bounds(k + 1, ell)?;
    let b3n = bn.range(BoxId::B3).expect("level 2 has B3");
    let b4n = bn.range(BoxId::B4).expect("level 2 has B4");
    let built = in_edges(&next, b3n.bottom, b3n.top);

    let prev = build_gk(k, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bp = box_bounds(k, ell)?;
    let b4p = bp.range(BoxId::B4).expect("level 2 has B4");
    let mut claimed = shift_nonzero(&in_edges(&prev, b4p.bottom, b4p.top), 3u64 << (k - 2));
    remove_one(&mut claimed, (0, b3n.bottom, EdgeColor::Red));
    claimed.push((b4n.bottom, b3n.bottom, EdgeColor::Red));
    claimed.push((b4n.top, b3n.bottom, EdgeColor::Blue));
    Ok((built, claimed))
}

/// Bottom box of `G_{k+1}` vs boxes two through four of `G_k` shifted by
/// `2^(k-1)`.
fn box_four_level_two(k: u8) -> Result<(Vec<EdgeShape>, Vec<EdgeShape>), Error> {
    let ell = PruneLevel::TWO;
    let next = build_gk(k + 1, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bn = box_bounds(k + 1, ell)?;
    let b4n = bn.range(BoxId::B4).expect("level 2 has B4");
    let built = in_edges(&next, b4n.bottom, b4n.top);

    let prev = build_gk(k, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bp = box_bounds(k, ell)?;
    let b2p = bp.range(BoxId::B2).expect("level 2 has B2");
    let b4p = bp.range(BoxId::B4).expect("level 2 has B4");
    let claimed = shift_nonzero(&in_edges(&prev, b4p.bottom, b2p.top), 1 << (k - 1));
    Ok((built, claimed))
}

/// Below the top box of `G_k`, node 0 reaches exactly the bottom node
/// (level 2).
fn zero_edges_level_two(k: u8) -> Result<(Vec<EdgeShape>, Vec<EdgeShape>), Error> {
    let ell = PruneLevel::TWO;
    let g = build_gk(k, ell, STRUCTURE_BLUE_WEIGHT)?;
    let bounds = box_bounds(k, ell)?;
    let b2 = bounds.range(BoxId::B2).expect("level 2 has B2");
    let b4 = bounds.range(BoxId::B4).expect("level 2 has B4");
    let built: Vec<EdgeShape> = g
        .edges()
        .iter()
        .filter(|e| e.src == 0 && (b4.bottom..=b2.top).contains(&e.dst))
        .map(|e| (e.src, e.dst, e.color))
        .collect();
    let claimed = vec![(0, b4.bottom, EdgeColor::Red)];
    Ok((built, claimed))
}

/// Multiset difference: `(missing, unexpected)` relative to the claim.
fn multiset_diff(
    mut built: Vec<EdgeShape>,
    mut claimed: Vec<EdgeShape>,
) -> (Vec<EdgeShape>, Vec<EdgeShape>) {
    built.sort_unstable();
    claimed.sort_unstable();
    let mut missing = Vec::new();
    let mut unexpected = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < built.len() || j < claimed.len() {
        match (built.get(i), claimed.get(j)) {
            (Some(b), Some(c)) if b == c => {
                i += 1;
                j += 1;
            }
            (Some(b), Some(c)) if b < c => {
                unexpected.push(*b);
                i += 1;
            }
            (Some(_), Some(c)) => {
                missing.push(*c);
                j += 1;
            }
            (Some(b), None) => {
                unexpected.push(*b);
                i += 1;
            }
            (None, Some(c)) => {
                missing.push(*c);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (missing, unexpected)
}
