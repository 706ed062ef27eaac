//! Geometric primitives and predicates.
//!
//! Every region is only considered through its part on or above the
//! separating line `y = 0`. Regions are closed: a point on a boundary is
//! covered. Membership compares squared distances (disks) or evaluates the
//! boundary line (half-planes) in plain floating point; coordinates are
//! bounded at load time (see [`Tolerance::COORD_LIMIT`]) so these stay
//! well-conditioned. Ties between equal coordinates are always broken by input
//! id, which stands in for a symbolic perturbation.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{cmp, Scalar};

/// Fixed numeric policy shared by the whole crate.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tolerance;

impl Tolerance {
    /// Largest admissible coordinate magnitude.
    pub const COORD_LIMIT: f64 = 1e6;
    /// Boundary points count as covered.
    pub const CLOSED: bool = true;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
    /// Input index (0-based).
    pub id: usize,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T, id: usize) -> Self {
        Self { x, y, id }
    }

    /// Strict total order by `(x, id)`.
    pub fn x_order(a: &Self, b: &Self) -> Ordering {
        cmp(a.x, b.x).then(a.id.cmp(&b.id))
    }

    pub fn dist2(&self, x: T, y: T) -> T {
        let dx = self.x - x;
        let dy = self.y - y;
        dx * dx + dy * dy
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape<T> {
    /// Disk with center `(cx, cy)`, `cy <= 0`.
    Disk { cx: T, cy: T, r: T },
    /// `{ (x, y) : y <= slope * x + intercept }`.
    LowerHalfPlane { slope: T, intercept: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region<T> {
    pub shape: Shape<T>,
    /// Input index (0-based).
    pub id: usize,
}

impl<T: Scalar> Region<T> {
    pub fn disk(cx: T, cy: T, r: T, id: usize) -> Self {
        Self { shape: Shape::Disk { cx, cy, r }, id }
    }

    pub fn half_plane(slope: T, intercept: T, id: usize) -> Self {
        Self { shape: Shape::LowerHalfPlane { slope, intercept }, id }
    }

    pub fn is_disk(&self) -> bool {
        matches!(self.shape, Shape::Disk { .. })
    }

    /// Center of a disk, `None` for half-planes.
    pub fn center(&self) -> Option<(T, T)> {
        match self.shape {
            Shape::Disk { cx, cy, .. } => Some((cx, cy)),
            Shape::LowerHalfPlane { .. } => None,
        }
    }

    pub fn radius(&self) -> Option<T> {
        match self.shape {
            Shape::Disk { r, .. } => Some(r),
            Shape::LowerHalfPlane { .. } => None,
        }
    }

    fn same_family(&self, other: &Self) -> bool {
        self.is_disk() == other.is_disk()
    }
}

/// Closed x-interval; the ends may be infinite for half-planes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extent<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Extent<T> {
    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// `true` iff `p` lies in the closed region `s`.
#[inline]
pub fn point_in_region<T: Scalar>(s: &Region<T>, p: &Point<T>) -> bool {
    match s.shape {
        Shape::Disk { cx, cy, r } => p.dist2(cx, cy) <= r * r,
        Shape::LowerHalfPlane { slope, intercept } => p.y <= slope * p.x + intercept,
    }
}

/// The x-range covered by `s` on or above the line; `None` if `s` does not
/// reach the line at all.
pub fn region_extent<T: Scalar>(s: &Region<T>) -> Option<Extent<T>> {
    match s.shape {
        Shape::Disk { cx, cy, r } => {
            let h2 = r * r - cy * cy;
            if h2 < T::zero() {
                return None;
            }
            let h = h2.sqrt();
            Some(Extent { lo: cx - h, hi: cx + h })
        }
        Shape::LowerHalfPlane { slope, intercept } => {
            let zero = T::zero();
            if slope > zero {
                Some(Extent { lo: -intercept / slope, hi: T::infinity() })
            } else if slope < zero {
                Some(Extent { lo: T::neg_infinity(), hi: -intercept / slope })
            } else if intercept >= zero {
                Some(Extent { lo: T::neg_infinity(), hi: T::infinity() })
            } else {
                None
            }
        }
    }
}

/// Height of the upper boundary of `s` at abscissa `x`, or `None` when `x` is
/// outside the extent.
#[inline]
pub fn upper_boundary_y<T: Scalar>(s: &Region<T>, x: T) -> Option<T> {
    let y = match s.shape {
        Shape::Disk { cx, cy, r } => {
            let dx = x - cx;
            let h2 = r * r - dx * dx;
            if h2 < T::zero() {
                return None;
            }
            cy + h2.sqrt()
        }
        Shape::LowerHalfPlane { slope, intercept } => slope * x + intercept,
    };
    (y >= T::zero()).then_some(y)
}

/// Up to two abscissas where the boundaries of two regions cross strictly
/// above the line.
#[derive(Debug, Clone, Copy)]
pub struct Crossings<T> {
    len: usize,
    xs: [T; 2],
}

impl<T: Scalar> Crossings<T> {
    fn none() -> Self {
        Self { len: 0, xs: [T::zero(); 2] }
    }

    fn push(&mut self, x: T) {
        self.xs[self.len] = x;
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Crossing abscissas in ascending order.
    pub fn as_slice(&self) -> &[T] {
        &self.xs[..self.len]
    }
}

/// All crossings of the two boundaries strictly above the line. Coincident
/// boundaries and regions of different families report no crossing.
pub fn upper_crossings<T: Scalar>(s1: &Region<T>, s2: &Region<T>) -> Crossings<T> {
    let zero = T::zero();
    let mut out = Crossings::none();
    match (s1.shape, s2.shape) {
        (Shape::Disk { cx: x1, cy: y1, r: r1 }, Shape::Disk { cx: x2, cy: y2, r: r2 }) => {
            let dx = x2 - x1;
            let dy = y2 - y1;
            let d2 = dx * dx + dy * dy;
            if d2 == zero {
                return out;
            }
            let d = d2.sqrt();
            let two = T::lit(2.0);
            let along = (r1 * r1 - r2 * r2 + d2) / (two * d);
            let h2 = r1 * r1 - along * along;
            if h2 < zero {
                return out;
            }
            let h = h2.sqrt();
            let (ux, uy) = (dx / d, dy / d);
            let (bx, by) = (x1 + along * ux, y1 + along * uy);
            if h == zero {
                // tangent
                if by > zero {
                    out.push(bx);
                }
                return out;
            }
            let mut cand = [(bx - h * uy, by + h * ux), (bx + h * uy, by - h * ux)];
            cand.sort_by(|a, b| cmp(a.0, b.0));
            for (x, y) in cand {
                if y > zero {
                    out.push(x);
                }
            }
        }
        (
            Shape::LowerHalfPlane { slope: a1, intercept: b1 },
            Shape::LowerHalfPlane { slope: a2, intercept: b2 },
        ) => {
            if a1 == a2 {
                return out;
            }
            let x = (b2 - b1) / (a1 - a2);
            if a1 * x + b1 > zero {
                out.push(x);
            }
        }
        _ => {}
    }
    out
}

/// The unique abscissa where the upper boundaries of `s1` and `s2` cross above
/// the line, if they cross there at all.
pub fn boundary_crossing_x<T: Scalar>(s1: &Region<T>, s2: &Region<T>) -> Result<Option<T>> {
    if !s1.same_family(s2) {
        return Err(Error::MixedFamily(s1.id, s2.id));
    }
    if s1.shape == s2.shape {
        return Err(Error::CoincidentRegions(s1.id, s2.id));
    }
    let c = upper_crossings(s1, s2);
    match c.len() {
        0 => Ok(None),
        1 => Ok(Some(c.as_slice()[0])),
        _ => Err(Error::MultipleCrossings(s1.id, s2.id)),
    }
}

/// Sort key for an extent endpoint.
///
/// Half-planes are ordered as the limit of a disk of radius `R -> inf` whose
/// boundary approaches the half-plane's boundary line. Their endpoints then
/// grow at different rates in `R` (linear for sloped lines, `sqrt(R)` for
/// horizontal ones), so an endpoint is keyed by a growth `tier` followed by the
/// leading coefficient within that tier. Disks always use tier 0 and the
/// endpoint itself.
#[derive(Debug, Clone, Copy)]
pub struct ExtentKey<T> {
    pub tier: i8,
    pub value: T,
}

impl<T: Scalar> PartialEq for ExtentKey<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for ExtentKey<T> {}

impl<T: Scalar> PartialOrd for ExtentKey<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for ExtentKey<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tier.cmp(&other.tier).then(cmp(self.value, other.value))
    }
}

/// Keys of the leftmost and rightmost point of `s` above the line, or `None`
/// for a region that covers nothing above the line.
pub fn extent_keys<T: Scalar>(s: &Region<T>) -> Option<(ExtentKey<T>, ExtentKey<T>)> {
    let key = |tier, value| ExtentKey { tier, value };
    match s.shape {
        Shape::Disk { .. } => {
            let e = region_extent(s)?;
            Some((key(0, e.lo), key(0, e.hi)))
        }
        Shape::LowerHalfPlane { slope: a, intercept: b } => {
            let zero = T::zero();
            if a < zero {
                Some((key(-2, a), key(0, -b / a)))
            } else if a > zero {
                Some((key(0, -b / a), key(2, a)))
            } else if b > zero {
                Some((key(-1, -b), key(1, b)))
            } else {
                None
            }
        }
    }
}

/// `true` iff the part of `s2` above the line lies inside `s1`.
///
/// Decided on the lower segments (extent keys): with at most one boundary
/// crossing above the line, containment of the lower segments is equivalent to
/// containment of the regions.
pub fn contains_region<T: Scalar>(s1: &Region<T>, s2: &Region<T>) -> bool {
    if !s1.same_family(s2) {
        return false;
    }
    match (extent_keys(s1), extent_keys(s2)) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some((l1, r1)), Some((l2, r2))) => l1 <= l2 && r2 <= r1,
    }
}
