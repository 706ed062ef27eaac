//! Detection of prunable regions.
//!
//! Region `i` is prunable iff some point outside it has `σ1 <= i <= σ2`. The
//! intervals `[σ1(p), σ2(p)]` are stored in a segment tree over the sorted
//! region positions, so the points with `σ1 <= i <= σ2` are exactly the
//! canonical sets along the root-to-leaf path of `i`. Each canonical set gets
//! a structure answering "does region `i` contain all of these points?":
//!
//! * [`PruneMode::Fvd`]: farthest point from the disk center,
//! * [`PruneMode::Cap`]: congruent disks, center inside the common cap,
//! * [`PruneMode::Dual`]: half-planes, dual upper envelope,
//! * [`PruneMode::Naive`]: scan of the canonical set (for differential tests).

mod cap;
mod dual;
mod farthest;

use std::fmt;
use std::str::FromStr;

pub use cap::{cap_contains, CapChain};
pub use dual::DualEnvelope;
pub use farthest::{convex_hull, BBox, FarthestStruct};

use crate::error::{Error, Result};
use crate::geom::{point_in_region, Point, Region};
use crate::instance::SortedInstance;
use crate::scalar::Scalar;
use crate::sigma::SigmaTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneMode {
    Fvd,
    Cap,
    Dual,
    Naive,
}

impl PruneMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PruneMode::Fvd => "fvd",
            PruneMode::Cap => "cap",
            PruneMode::Dual => "dual",
            PruneMode::Naive => "naive",
        }
    }
}

impl fmt::Display for PruneMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PruneMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fvd" => Ok(PruneMode::Fvd),
            "cap" => Ok(PruneMode::Cap),
            "dual" => Ok(PruneMode::Dual),
            "naive" => Ok(PruneMode::Naive),
            _ => Err(Error::Schema(format!("unknown prune mode `{s}`"))),
        }
    }
}

/// Canonical point sets of a segment tree over sorted region positions
/// `0..m`, heap-ordered (root 1).
#[derive(Debug, Clone)]
pub struct CanonicalSets {
    m: usize,
    start: Vec<u32>,
    items: Vec<u32>,
}

impl CanonicalSets {
    /// Stores interval `intervals[k]` at its canonical nodes; items are the
    /// positions `k`, so feeding intervals in x-order keeps every set x-sorted.
    pub fn build(m: usize, intervals: &[(usize, usize)]) -> Self {
        let nodes = 4 * m.max(1);
        let mut count = vec![0u32; nodes + 1];
        for &(l, r) in intervals {
            Self::visit(1, 0, m, l, r, &mut |v| count[v] += 1);
        }
        let mut start = vec![0u32; nodes + 1];
        let mut acc = 0;
        for v in 0..nodes {
            start[v] = acc;
            acc += count[v];
        }
        start[nodes] = acc;
        let mut fill = start.clone();
        let mut items = vec![0u32; acc as usize];
        for (k, &(l, r)) in intervals.iter().enumerate() {
            Self::visit(1, 0, m, l, r, &mut |v| {
                items[fill[v] as usize] = k as u32;
                fill[v] += 1;
            });
        }
        Self { m, start, items }
    }

    fn visit(node: usize, lo: usize, hi: usize, l: usize, r: usize, f: &mut impl FnMut(usize)) {
        if r < lo || l >= hi {
            return;
        }
        if l <= lo && hi - 1 <= r {
            f(node);
            return;
        }
        let mid = (lo + hi) / 2;
        Self::visit(2 * node, lo, mid, l, r, f);
        Self::visit(2 * node + 1, mid, hi, l, r, f);
    }

    pub fn set(&self, node: usize) -> &[u32] {
        &self.items[self.start[node] as usize..self.start[node + 1] as usize]
    }

    /// Heap ids from the root down to leaf `i`.
    pub fn path(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let (mut node, mut lo, mut hi) = (1, 0, self.m);
        while hi > lo {
            out.push(node);
            if hi - lo == 1 {
                break;
            }
            let mid = (lo + hi) / 2;
            if i < mid {
                node *= 2;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid;
            }
        }
        out
    }

    /// Total stored entries (sum of canonical set sizes).
    pub fn total(&self) -> usize {
        self.items.len()
    }
}

#[derive(Debug, Clone)]
enum NodeStruct<T> {
    Fvd(FarthestStruct<T>),
    Cap(CapChain<T>),
    Dual(DualEnvelope<T>),
    Naive,
}

#[derive(Debug, Clone)]
pub struct PruneIndex<T> {
    mode: PruneMode,
    regions: Vec<Region<T>>,
    /// Points in `(x, id)` order.
    points: Vec<Point<T>>,
    sets: CanonicalSets,
    /// Per heap node: index into `structs`, or `u32::MAX` for empty sets.
    slot: Vec<u32>,
    structs: Vec<NodeStruct<T>>,
}

/// Checks that `mode` suits the regions (congruent disks for `cap`, disks
/// for `fvd`, half-planes for `dual`).
pub fn check_mode<T: Scalar>(regions: &[Region<T>], mode: PruneMode) -> Result<()> {
    let all_disks = regions.iter().all(Region::is_disk);
    let all_planes = regions.iter().all(|s| !s.is_disk());
    let congruent = regions.windows(2).all(|w| w[0].radius() == w[1].radius());
    let ok = match mode {
        PruneMode::Naive => true,
        PruneMode::Fvd => all_disks,
        PruneMode::Cap => all_disks && congruent,
        PruneMode::Dual => all_planes,
    };
    if ok {
        Ok(())
    } else {
        let variant = if !all_disks && !all_planes {
            "mixed"
        } else if all_planes {
            "half-plane"
        } else if congruent {
            "disk"
        } else {
            "non-congruent disk"
        };
        Err(Error::IncompatibleMode { mode: mode.as_str(), variant })
    }
}

/// Box around all disk centers, inflated by one unit.
fn center_box<T: Scalar>(regions: &[Region<T>]) -> BBox<T> {
    let one = T::one();
    let mut b = BBox { xmin: T::infinity(), ymin: T::infinity(), xmax: T::neg_infinity(), ymax: T::neg_infinity() };
    for (x, y) in regions.iter().filter_map(Region::center) {
        b.xmin = b.xmin.min(x);
        b.xmax = b.xmax.max(x);
        b.ymin = b.ymin.min(y);
        b.ymax = b.ymax.max(y);
    }
    if b.xmin > b.xmax {
        return BBox { xmin: -one, ymin: -one, xmax: one, ymax: one };
    }
    BBox { xmin: b.xmin - one, ymin: b.ymin - one, xmax: b.xmax + one, ymax: b.ymax + one }
}

impl<T: Scalar> PruneIndex<T> {
    /// Builds the canonical sets and per-node structures.
    ///
    /// `sig` must be aligned with `points` and cover every point.
    pub fn build(si: &SortedInstance<T>, points: &[Point<T>], sig: &SigmaTable, mode: PruneMode) -> Result<Self> {
        check_mode(&si.kept, mode)?;
        let m = si.m();
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| Point::x_order(&points[a], &points[b]));
        let mut intervals = Vec::with_capacity(points.len());
        for &k in &order {
            match sig.entries[k] {
                Some(pair) => intervals.push(pair),
                None => return Err(Error::UncoveredPoint { id: points[k].id }),
            }
        }
        let xpoints: Vec<Point<T>> = order.iter().map(|&k| points[k]).collect();
        let sets = CanonicalSets::build(m, &intervals);

        let nodes = 4 * m.max(1);
        let mut slot = vec![u32::MAX; nodes];
        let mut structs = Vec::new();
        let bbox = center_box(&si.kept);
        let radius = si.kept.first().and_then(Region::radius).unwrap_or(T::one());
        let mut buf: Vec<Point<T>> = Vec::new();
        for (node, s) in slot.iter_mut().enumerate() {
            let set = sets.set(node);
            if set.is_empty() {
                continue;
            }
            buf.clear();
            buf.extend(set.iter().map(|&k| xpoints[k as usize]));
            let st = match mode {
                PruneMode::Fvd => NodeStruct::Fvd(FarthestStruct::build(&buf, bbox)?),
                PruneMode::Cap => NodeStruct::Cap(CapChain::build(&buf, radius)),
                PruneMode::Dual => NodeStruct::Dual(DualEnvelope::build(&buf)),
                PruneMode::Naive => NodeStruct::Naive,
            };
            *s = structs.len() as u32;
            structs.push(st);
        }
        Ok(Self { mode, regions: si.kept.clone(), points: xpoints, sets, slot, structs })
    }

    pub fn mode(&self) -> PruneMode {
        self.mode
    }

    pub fn canonical_sets(&self) -> &CanonicalSets {
        &self.sets
    }

    /// Points in the order used by the canonical sets.
    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    /// Whether region `i` contains every point stored at `node`.
    fn node_contained(&self, node: usize, i: usize) -> bool {
        let slot = self.slot[node];
        if slot == u32::MAX {
            return true;
        }
        let s = &self.regions[i];
        match &self.structs[slot as usize] {
            NodeStruct::Fvd(fs) => {
                let (cx, cy) = s.center().expect("fvd mode holds disks");
                point_in_region(s, &fs.farthest_point(&Point::new(cx, cy, usize::MAX)))
            }
            NodeStruct::Cap(cc) => {
                let (cx, cy) = s.center().expect("cap mode holds disks");
                cc.contains(&Point::new(cx, cy, usize::MAX))
            }
            NodeStruct::Dual(de) => de.covers_all(s),
            NodeStruct::Naive => {
                self.sets.set(node).iter().all(|&k| point_in_region(s, &self.points[k as usize]))
            }
        }
    }

    /// Whether sorted region `i` is prunable; stops at the first witness node.
    pub fn is_prunable(&self, i: usize) -> bool {
        self.sets.path(i).into_iter().any(|node| !self.node_contained(node, i))
    }

    /// All prunable sorted positions, ascending.
    pub fn find_prunable(&self) -> Vec<usize> {
        (0..self.regions.len()).filter(|&i| self.is_prunable(i)).collect()
    }
}

/// Builds the index and returns every prunable sorted position.
pub fn find_prunable<T: Scalar>(
    si: &SortedInstance<T>,
    points: &[Point<T>],
    sig: &SigmaTable,
    mode: PruneMode,
) -> Result<Vec<usize>> {
    Ok(PruneIndex::build(si, points, sig, mode)?.find_prunable())
}
