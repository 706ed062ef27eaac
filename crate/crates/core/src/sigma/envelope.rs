//! Upper envelopes of region boundaries together with the line `y = 0`.

use crate::geom::{point_in_region, region_extent, upper_boundary_y, upper_crossings, Point, Region};
use crate::scalar::Scalar;

/// Piece label for the line itself.
pub const FLOOR: u32 = u32::MAX;

/// x-monotone upper envelope.
///
/// Piece `k` spans `(ends[k-1], ends[k]]`; the last end is always `+inf`.
/// Pieces name a region by its position in the sorted region list, or
/// [`FLOOR`]. Adjacent pieces never repeat a label.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope<T> {
    pub ends: Vec<T>,
    pub pieces: Vec<u32>,
}

/// Borrowed envelope, as stored inside the index.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeView<'a, T> {
    pub ends: &'a [T],
    pub pieces: &'a [u32],
}

impl<T: Scalar> Default for Envelope<T> {
    fn default() -> Self {
        Self::floor()
    }
}

impl<T: Scalar> Envelope<T> {
    /// The bare line.
    pub fn floor() -> Self {
        Self { ends: vec![T::infinity()], pieces: vec![FLOOR] }
    }

    /// Envelope of a single region (at sorted position `idx`) and the line.
    pub fn single(s: &Region<T>, idx: u32) -> Self {
        let mut env = Self { ends: Vec::with_capacity(3), pieces: Vec::with_capacity(3) };
        let Some(ext) = region_extent(s) else {
            return Self::floor();
        };
        if ext.lo > T::neg_infinity() {
            env.push(FLOOR, ext.lo);
        }
        env.push(idx, ext.hi);
        if ext.hi < T::infinity() {
            env.push(FLOOR, T::infinity());
        }
        env
    }

    pub fn view(&self) -> EnvelopeView<'_, T> {
        EnvelopeView { ends: &self.ends, pieces: &self.pieces }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    fn clear(&mut self) {
        self.ends.clear();
        self.pieces.clear();
    }

    fn push(&mut self, piece: u32, end: T) {
        match self.pieces.last() {
            Some(&last) if last == piece => *self.ends.last_mut().unwrap() = end,
            _ => {
                self.pieces.push(piece);
                self.ends.push(end);
            }
        }
    }
}

impl<'a, T: Scalar> EnvelopeView<'a, T> {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Index of the piece whose span contains `x`.
    pub fn locate(&self, x: T) -> usize {
        self.ends.partition_point(|&e| e < x)
    }

    /// Envelope height at `x` (0 on the line).
    pub fn height(&self, regions: &[Region<T>], x: T) -> T {
        match self.pieces[self.locate(x)] {
            FLOOR => T::zero(),
            i => upper_boundary_y(&regions[i as usize], x).unwrap_or(T::zero()),
        }
    }

    /// Whether `p` (on or above the line) is inside a region of this
    /// envelope, given that `x(p)` falls into piece `k`.
    ///
    /// Only the region on top at `x(p)` can matter. Neighbouring pieces are
    /// also tried when `x(p)` is within rounding distance of a breakpoint.
    pub fn covers_at(&self, regions: &[Region<T>], p: &Point<T>, k: usize) -> bool {
        let hit = |k: usize| match self.pieces[k] {
            FLOOR => false,
            i => point_in_region(&regions[i as usize], p),
        };
        if hit(k) {
            return true;
        }
        let tol = T::near_tol(p.x);
        if k + 1 < self.pieces.len() && self.ends[k] - p.x <= tol && hit(k + 1) {
            return true;
        }
        k > 0 && p.x - self.ends[k - 1] <= tol && hit(k - 1)
    }

    pub fn covers(&self, regions: &[Region<T>], p: &Point<T>) -> bool {
        self.covers_at(regions, p, self.locate(p.x))
    }
}

/// Representative abscissa strictly inside `(lo, hi)`.
fn inner_point<T: Scalar>(lo: T, hi: T) -> T {
    let one = T::one();
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => lo + (hi - lo) / T::lit(2.0),
        (false, true) => hi - one - hi.abs(),
        (true, false) => lo + one + lo.abs(),
        (false, false) => T::zero(),
    }
}

fn height_or_neg_inf<T: Scalar>(s: &Region<T>, x: T) -> T {
    upper_boundary_y(s, x).unwrap_or(T::neg_infinity())
}

/// Pointwise maximum of two envelopes over the same region list, written to
/// `out` (which is cleared first). Runs in time linear in the input sizes.
pub fn merge_into<T: Scalar>(
    a: EnvelopeView<'_, T>,
    b: EnvelopeView<'_, T>,
    regions: &[Region<T>],
    out: &mut Envelope<T>,
) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    let mut lo = T::neg_infinity();
    loop {
        let (ea, eb) = (a.ends[i], b.ends[j]);
        let hi = if ea < eb { ea } else { eb };
        let (pa, pb) = (a.pieces[i], b.pieces[j]);
        if pa == pb || pb == FLOOR {
            out.push(pa, hi);
        } else if pa == FLOOR {
            out.push(pb, hi);
        } else {
            let (sa, sb) = (&regions[pa as usize], &regions[pb as usize]);
            let mut start = lo;
            for &c in upper_crossings(sa, sb).as_slice() {
                if c > lo && c < hi {
                    push_winner(out, sa, sb, pa, pb, start, c);
                    start = c;
                }
            }
            push_winner(out, sa, sb, pa, pb, start, hi);
        }
        if hi == T::infinity() {
            break;
        }
        if ea == hi {
            i += 1;
        }
        if eb == hi {
            j += 1;
        }
        lo = hi;
    }
}

fn push_winner<T: Scalar>(
    out: &mut Envelope<T>,
    sa: &Region<T>,
    sb: &Region<T>,
    pa: u32,
    pb: u32,
    lo: T,
    hi: T,
) {
    let x = inner_point(lo, hi);
    let win = if height_or_neg_inf(sb, x) > height_or_neg_inf(sa, x) { pb } else { pa };
    out.push(win, hi);
}

/// Owned convenience wrapper around [`merge_into`].
pub fn merge_envelopes<T: Scalar>(a: &Envelope<T>, b: &Envelope<T>, regions: &[Region<T>]) -> Envelope<T> {
    let mut out = Envelope { ends: Vec::new(), pieces: Vec::new() };
    merge_into(a.view(), b.view(), regions, &mut out);
    out
}
