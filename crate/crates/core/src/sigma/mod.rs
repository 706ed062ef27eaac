//! First and last covering region of every point.
//!
//! A complete binary tree is laid over the sorted regions; each node stores
//! the upper envelope of its regions' arcs and the line. A point is covered by
//! some region below a node exactly when it lies under that node's envelope,
//! so the smallest covering index is found by descending towards the left
//! child whenever the left envelope covers the point (and symmetrically for
//! the largest index).

mod cascade;
mod envelope;

use std::fmt;
use std::str::FromStr;

pub use cascade::Cascade;
pub use envelope::{merge_envelopes, merge_into, Envelope, EnvelopeView, FLOOR};

use crate::error::Error;
use crate::geom::{Point, Region};
use crate::instance::SortedInstance;
use crate::scalar::Scalar;

/// How the envelope piece under a query point is located at each tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SigmaBackend {
    /// Binary search in every node's breakpoint list.
    #[default]
    Binary,
    /// One search at the root, then fractional cascading.
    Cascade,
}

impl SigmaBackend {
    pub fn as_str(self) -> &'static str {
        match self {
            SigmaBackend::Binary => "binary",
            SigmaBackend::Cascade => "cascade",
        }
    }
}

impl fmt::Display for SigmaBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SigmaBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "binary" => Ok(SigmaBackend::Binary),
            "cascade" => Ok(SigmaBackend::Cascade),
            _ => Err(Error::Schema(format!("unknown sigma backend `{s}`"))),
        }
    }
}

/// Sorted positions (0-based) of the first and last region covering a point.
pub type SigmaPair = (usize, usize);

#[derive(Debug, Clone)]
pub struct SigmaIndex<T> {
    regions: Vec<Region<T>>,
    /// Per heap node: start and length of its envelope in `ends`/`pieces`.
    span: Vec<(u32, u32)>,
    ends: Vec<T>,
    pieces: Vec<u32>,
    cascade: Option<Cascade<T>>,
    backend: SigmaBackend,
}

impl<T: Scalar> SigmaIndex<T> {
    /// Builds all node envelopes bottom-up; catalogs for fractional cascading
    /// are only built for [`SigmaBackend::Cascade`].
    pub fn build(si: &SortedInstance<T>, backend: SigmaBackend) -> Self {
        let m = si.m();
        let mut idx = SigmaIndex {
            regions: si.kept.clone(),
            span: vec![(0, 0); 4 * m.max(1)],
            ends: Vec::new(),
            pieces: Vec::new(),
            cascade: None,
            backend,
        };
        if m > 0 {
            let mut scratch = Envelope::floor();
            build_node(&mut idx, 1, 0, m, &mut scratch);
        }
        if backend == SigmaBackend::Cascade {
            let cascade = Cascade::build(m, |node| {
                let e = idx.envelope(node);
                &e.ends[..e.ends.len().saturating_sub(1)]
            });
            idx.cascade = Some(cascade);
        }
        idx
    }

    pub fn m(&self) -> usize {
        self.regions.len()
    }

    pub fn backend(&self) -> SigmaBackend {
        self.backend
    }

    pub fn regions(&self) -> &[Region<T>] {
        &self.regions
    }

    /// Envelope stored at heap node `node` (root is 1).
    pub fn envelope(&self, node: usize) -> EnvelopeView<'_, T> {
        let (s, l) = self.span[node];
        let r = s as usize..(s + l) as usize;
        EnvelopeView { ends: &self.ends[r.clone()], pieces: &self.pieces[r] }
    }

    pub fn root_envelope(&self) -> Option<EnvelopeView<'_, T>> {
        (self.m() > 0).then(|| self.envelope(1))
    }

    /// Every node as `(heap id, lo, hi)` with member range `lo..hi`.
    pub fn nodes(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        if self.m() > 0 {
            let mut stack = vec![(1, 0, self.m())];
            while let Some((node, lo, hi)) = stack.pop() {
                out.push((node, lo, hi));
                if hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    stack.push((2 * node, lo, mid));
                    stack.push((2 * node + 1, mid, hi));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Total number of envelope pieces over all nodes.
    pub fn total_pieces(&self) -> usize {
        self.pieces.len()
    }

    /// `(σ1, σ2)` of `p`, or `None` when no region covers it.
    pub fn query(&self, p: &Point<T>) -> Option<SigmaPair> {
        match (self.backend, &self.cascade) {
            (SigmaBackend::Cascade, Some(c)) => self.query_cascade(c, p),
            _ => self.query_binary(p),
        }
    }

    /// Query with per-node binary search regardless of the build backend.
    pub fn query_binary(&self, p: &Point<T>) -> Option<SigmaPair> {
        let m = self.m();
        if m == 0 || !self.envelope(1).covers(&self.regions, p) {
            return None;
        }
        let covers = |node: usize| self.envelope(node).covers(&self.regions, p);
        Some((self.descend(covers, true), self.descend(covers, false)))
    }

    fn descend(&self, covers: impl Fn(usize) -> bool, leftmost: bool) -> usize {
        let (mut node, mut lo, mut hi) = (1, 0, self.m());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let (first, second) = if leftmost { (2 * node, 2 * node + 1) } else { (2 * node + 1, 2 * node) };
            let child = if covers(first) { first } else { second };
            if child == 2 * node {
                hi = mid;
            } else {
                lo = mid;
            }
            node = child;
        }
        lo
    }

    fn query_cascade(&self, c: &Cascade<T>, p: &Point<T>) -> Option<SigmaPair> {
        let m = self.m();
        if m == 0 {
            return None;
        }
        let x = p.x;
        let root = c.root_position(x);
        if !self.envelope(1).covers_at(&self.regions, p, c.piece(1, root)) {
            return None;
        }
        let walk = |leftmost: bool| {
            let (mut node, mut lo, mut hi, mut pos) = (1, 0, m, root);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                let (first, second) =
                    if leftmost { (2 * node, 2 * node + 1) } else { (2 * node + 1, 2 * node) };
                let fpos = c.descend(node, pos, first, x);
                let (child, cpos) = if self.envelope(first).covers_at(&self.regions, p, c.piece(first, fpos)) {
                    (first, fpos)
                } else {
                    (second, c.descend(node, pos, second, x))
                };
                if child == 2 * node {
                    hi = mid;
                } else {
                    lo = mid;
                }
                node = child;
                pos = cpos;
            }
            lo
        };
        Some((walk(true), walk(false)))
    }

    /// σ values for every point, in the order given.
    pub fn table(&self, points: &[Point<T>]) -> SigmaTable {
        SigmaTable { entries: points.iter().map(|p| self.query(p)).collect() }
    }
}

fn build_node<T: Scalar>(idx: &mut SigmaIndex<T>, node: usize, lo: usize, hi: usize, scratch: &mut Envelope<T>) {
    if hi - lo == 1 {
        let e = Envelope::single(&idx.regions[lo], lo as u32);
        store(idx, node, &e);
        return;
    }
    let mid = (lo + hi) / 2;
    build_node(idx, 2 * node, lo, mid, scratch);
    build_node(idx, 2 * node + 1, mid, hi, scratch);
    merge_into(idx.envelope(2 * node), idx.envelope(2 * node + 1), &idx.regions, scratch);
    store(idx, node, scratch);
}

fn store<T: Scalar>(idx: &mut SigmaIndex<T>, node: usize, e: &Envelope<T>) {
    idx.span[node] = (idx.pieces.len() as u32, e.len() as u32);
    idx.ends.extend_from_slice(&e.ends);
    idx.pieces.extend_from_slice(&e.pieces);
}

/// σ values per point, aligned with the point list they were computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTable {
    pub entries: Vec<Option<SigmaPair>>,
}

impl SigmaTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Position of the first uncovered point, if any.
    pub fn first_uncovered(&self) -> Option<usize> {
        self.entries.iter().position(Option::is_none)
    }

    /// All pairs, or `None` if some point is uncovered.
    pub fn complete(&self) -> Option<Vec<SigmaPair>> {
        self.entries.iter().copied().collect()
    }
}
