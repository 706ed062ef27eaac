//! Common intersection, below the line, of congruent disks centred at points.
//!
//! For points `p` on or above the line and radius `r`, a center `c` below the
//! line is within distance `r` of every point exactly when `c` lies above the
//! upper envelope of the lower arcs `y = y(p) - sqrt(r^2 - (x - x(p))^2)`.
//! Below the line each arc is a cup over `[x(p) - w, x(p) + w]` with
//! `w = sqrt(r^2 - y(p)^2)`, and two cups cross at most once there, so the
//! envelope is assembled with a single stack pass once nested cups are gone.

use crate::geom::Point;
use crate::scalar::{cmp, Scalar};

#[derive(Debug, Clone)]
pub struct CapChain<T> {
    radius: T,
    /// x-range of the intersection; `lo > hi` when it is empty.
    lo: T,
    hi: T,
    /// Piece `k` spans `(ends[k-1], ends[k]]`, the last end is `hi`.
    ends: Vec<T>,
    /// Point whose lower arc is on top over each piece.
    sites: Vec<Point<T>>,
}

impl<T: Scalar> CapChain<T> {
    /// Builds the chain for points sorted by x.
    pub fn build(points: &[Point<T>], radius: T) -> Self {
        let zero = T::zero();
        let mut chain = Self { radius, lo: T::one(), hi: zero, ends: Vec::new(), sites: Vec::new() };
        if points.is_empty() {
            chain.lo = T::neg_infinity();
            chain.hi = T::infinity();
            return chain;
        }
        let r2 = radius * radius;
        let mut cups = Vec::with_capacity(points.len());
        for p in points {
            let w2 = r2 - p.y * p.y;
            if w2 < zero {
                return chain;
            }
            let w = w2.sqrt();
            cups.push((p.x - w, p.x + w, *p));
        }
        let lo = cups.iter().map(|c| c.0).fold(T::neg_infinity(), T::max);
        let hi = cups.iter().map(|c| c.1).fold(T::infinity(), T::min);
        if lo > hi {
            return chain;
        }
        chain.lo = lo;
        chain.hi = hi;

        // a cup nested inside another lies above it, so the outer one is dropped
        cups.sort_by(|a, b| cmp(a.0, b.0).then(cmp(b.1, a.1)));
        let mut inner = Vec::with_capacity(cups.len());
        let mut min_right = T::infinity();
        for c in cups.into_iter().rev() {
            if c.1 < min_right {
                min_right = c.1;
                inner.push(c.2);
            }
        }

        // `inner` runs from the largest left end down; each new cup takes over
        // to the right of its crossing with the top of the stack
        let arc = |p: &Point<T>, x: T| {
            let dx = x - p.x;
            p.y - (r2 - dx * dx).max(zero).sqrt()
        };
        let mut stack: Vec<(Point<T>, T)> = Vec::with_capacity(inner.len());
        for q in inner {
            loop {
                let Some(&(t, start)) = stack.last() else {
                    stack.push((q, lo));
                    break;
                };
                let q_left = arc(&q, lo) > arc(&t, lo);
                let q_right = arc(&q, hi) > arc(&t, hi);
                if !q_right {
                    // q never rises above t inside the range
                    break;
                }
                if q_left {
                    stack.pop();
                    continue;
                }
                let c = crossing(&t, &q, radius, lo, hi);
                if c <= start {
                    stack.pop();
                    continue;
                }
                stack.push((q, c));
                break;
            }
        }
        for k in 0..stack.len() {
            chain.sites.push(stack[k].0);
            chain.ends.push(if k + 1 < stack.len() { stack[k + 1].1 } else { hi });
        }
        chain
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// x-range of the intersection.
    pub fn x_range(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    /// Chain pieces as `(right end, site)`.
    pub fn pieces(&self) -> impl Iterator<Item = (T, &Point<T>)> {
        self.ends.iter().copied().zip(self.sites.iter())
    }

    /// Height of the chain at `x` inside the x-range.
    pub fn height(&self, x: T) -> Option<T> {
        if self.is_empty() || self.sites.is_empty() || x < self.lo || x > self.hi {
            return None;
        }
        let p = &self.sites[self.ends.partition_point(|&e| e < x).min(self.sites.len() - 1)];
        let dx = x - p.x;
        Some(p.y - (self.radius * self.radius - dx * dx).max(T::zero()).sqrt())
    }

    /// Whether a center `c` (on or below the line) is within the radius of
    /// every point.
    pub fn contains(&self, c: &Point<T>) -> bool {
        if self.sites.is_empty() {
            return !self.is_empty();
        }
        let last = self.sites.len() - 1;
        let k = self.ends.partition_point(|&e| e < c.x).min(last);
        let r2 = self.radius * self.radius;
        let inside = |k: usize| self.sites[k].dist2(c.x, c.y) <= r2;
        if !inside(k) {
            return false;
        }
        let tol = T::near_tol(c.x);
        if k < last && self.ends[k] - c.x <= tol && !inside(k + 1) {
            return false;
        }
        !(k > 0 && c.x - self.ends[k - 1] <= tol && !inside(k - 1))
    }
}

/// Abscissa where the lower arcs of `t` and `q` cross below the line, clamped
/// to `[lo, hi]`.
fn crossing<T: Scalar>(t: &Point<T>, q: &Point<T>, r: T, lo: T, hi: T) -> T {
    let zero = T::zero();
    let two = T::lit(2.0);
    let (dx, dy) = (q.x - t.x, q.y - t.y);
    let d2 = dx * dx + dy * dy;
    let h = (r * r - d2 / (two * two)).max(zero).sqrt();
    let d = d2.sqrt();
    let (mx, my) = ((t.x + q.x) / two, (t.y + q.y) / two);
    let (ux, uy) = (-dy / d, dx / d);
    let a = (mx + h * ux, my + h * uy);
    let b = (mx - h * ux, my - h * uy);
    let x = if a.1 < b.1 { a.0 } else { b.0 };
    x.max(lo).min(hi)
}

/// `cap_contains` in functional form.
pub fn cap_contains<T: Scalar>(cc: &CapChain<T>, c: &Point<T>) -> bool {
    cc.contains(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point<f64>> {
        let mut p: Vec<_> = v.iter().enumerate().map(|(i, &(x, y))| Point::new(x, y, i)).collect();
        p.sort_by(Point::x_order);
        p
    }

    fn c(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y, 0)
    }

    #[test]
    fn examples() {
        let cc = CapChain::build(&pts(&[(0.0, 1.0)]), 2.0);
        assert!(cap_contains(&cc, &c(0.0, -0.5)));
        assert!(!cap_contains(&cc, &c(0.0, -1.5)));
        let cc = CapChain::build(&pts(&[(-1.0, 1.0), (1.0, 1.0)]), 2.0);
        assert!(!cap_contains(&cc, &c(0.0, -0.9)));
        assert!(cap_contains(&cc, &c(0.0, -0.5)));
    }

    #[test]
    fn empty_cases() {
        let far = CapChain::build(&pts(&[(-5.0, 0.5), (5.0, 0.5)]), 2.0);
        assert!(far.is_empty());
        assert!(!far.contains(&c(0.0, 0.0)));
        let high = CapChain::build(&pts(&[(0.0, 3.0)]), 2.0);
        assert!(!high.contains(&c(0.0, 0.0)));
    }

    fn lcg(state: &mut u64) -> f64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (*state >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn matches_max_distance_and_minimizer_property() {
        let mut s = 5u64;
        for _ in 0..200 {
            let n = 1 + (lcg(&mut s) * 12.0) as usize;
            let raw: Vec<(f64, f64)> = (0..n).map(|_| (lcg(&mut s) * 3.0, lcg(&mut s) * 1.5)).collect();
            let p = pts(&raw);
            let cc = CapChain::build(&p, 2.0);
            for _ in 0..50 {
                let q = c(lcg(&mut s) * 5.0 - 1.0, -lcg(&mut s) * 2.0);
                let want = p.iter().all(|s| s.dist2(q.x, q.y) <= 4.0);
                assert_eq!(cc.contains(&q), want, "{raw:?} {q:?}");
            }
            if cc.is_empty() {
                continue;
            }
            // chain is x-monotone and each piece's site is the binding one
            let ends: Vec<f64> = cc.pieces().map(|(e, _)| e).collect();
            assert!(ends.windows(2).all(|w| w[0] <= w[1]));
            let (lo, hi) = cc.x_range();
            for k in 0..=40 {
                let x = (lo + (hi - lo) * k as f64 / 40.0).min(hi);
                let h = cc.height(x).unwrap();
                let top = p
                    .iter()
                    .map(|s| s.y - (4.0 - (x - s.x).powi(2)).max(0.0).sqrt())
                    .fold(f64::NEG_INFINITY, f64::max);
                assert!((h - top).abs() < 1e-9, "x {x} chain {h} max {top}");
            }
        }
    }
}
