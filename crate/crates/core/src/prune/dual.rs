//! Point-line duality for lower half-planes.
//!
//! A half-plane `y <= a*x + b` contains `p` iff `b >= y(p) - a*x(p)`. Each
//! point becomes the line `a -> y(p) - a*x(p)`; a half-plane contains a whole
//! point set iff its intercept is at least the upper envelope of those lines
//! at its slope.

use crate::geom::{point_in_region, Point, Region};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct DualEnvelope<T> {
    /// Piece `k` spans `(ends[k-1], ends[k]]` in slope space; last end `+inf`.
    ends: Vec<T>,
    sites: Vec<Point<T>>,
}

/// Slope at which the dual lines of `p` and `q` (distinct x) meet.
fn meet<T: Scalar>(p: &Point<T>, q: &Point<T>) -> T {
    (p.y - q.y) / (p.x - q.x)
}

impl<T: Scalar> DualEnvelope<T> {
    /// Builds the envelope from points sorted by x.
    pub fn build(points: &[Point<T>]) -> Self {
        // dual slopes are -x, so walk the points from the largest x down
        let mut sites: Vec<Point<T>> = Vec::with_capacity(points.len());
        let mut starts: Vec<T> = Vec::with_capacity(points.len());
        for q in points.iter().rev() {
            if let Some(top) = sites.last() {
                if top.x == q.x {
                    if q.y <= top.y {
                        continue;
                    }
                    sites.pop();
                    starts.pop();
                }
            }
            loop {
                let Some(top) = sites.last() else {
                    sites.push(*q);
                    starts.push(T::neg_infinity());
                    break;
                };
                let a = meet(top, q);
                if a <= *starts.last().unwrap() {
                    sites.pop();
                    starts.pop();
                    continue;
                }
                sites.push(*q);
                starts.push(a);
                break;
            }
        }
        let mut ends: Vec<T> = starts.iter().skip(1).copied().collect();
        ends.push(T::infinity());
        Self { ends, sites }
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// max over points of `y(p) - a*x(p)`.
    pub fn value(&self, slope: T) -> Option<T> {
        let k = self.ends.partition_point(|&e| e < slope);
        self.sites.get(k).map(|p| p.y - slope * p.x)
    }

    /// Whether the half-plane contains every point.
    pub fn covers_all(&self, s: &Region<T>) -> bool {
        let Some((slope, _)) = (match s.shape {
            crate::geom::Shape::LowerHalfPlane { slope, intercept } => Some((slope, intercept)),
            _ => None,
        }) else {
            return false;
        };
        if self.sites.is_empty() {
            return true;
        }
        let k = self.ends.partition_point(|&e| e < slope);
        let inside = |k: usize| point_in_region(s, &self.sites[k]);
        if !inside(k) {
            return false;
        }
        let tol = T::near_tol(slope);
        if k + 1 < self.sites.len() && self.ends[k] - slope <= tol && !inside(k + 1) {
            return false;
        }
        !(k > 0 && slope - self.ends[k - 1] <= tol && !inside(k - 1))
    }
}
