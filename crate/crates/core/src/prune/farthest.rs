//! Farthest-point queries through a farthest-point Voronoi diagram.
//!
//! Only convex-hull vertices own a cell. Each cell is obtained by clipping a
//! clipping box against the bisector half-planes of the other hull vertices;
//! the clipped diagram is then cut into vertical slabs at every cell vertex so
//! that a query is two binary searches.

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::scalar::{cmp, Scalar};

/// Axis-aligned box that must contain every query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox<T> {
    pub xmin: T,
    pub ymin: T,
    pub xmax: T,
    pub ymax: T,
}

impl<T: Scalar> BBox<T> {
    pub fn contains(&self, x: T, y: T) -> bool {
        self.xmin <= x && x <= self.xmax && self.ymin <= y && y <= self.ymax
    }
}

/// Lower boundary of a cell inside one slab.
#[derive(Debug, Clone, Copy)]
struct Floor<T> {
    x0: T,
    y0: T,
    x1: T,
    y1: T,
}

impl<T: Scalar> Floor<T> {
    fn y_at(&self, x: T) -> T {
        if self.x1 == self.x0 {
            return if self.y0 < self.y1 { self.y0 } else { self.y1 };
        }
        self.y0 + (self.y1 - self.y0) * (x - self.x0) / (self.x1 - self.x0)
    }
}

#[derive(Debug, Clone)]
pub struct FarthestStruct<T> {
    sites: Vec<Point<T>>,
    bbox: BBox<T>,
    /// Slab boundaries, ascending.
    slab_x: Vec<T>,
    /// Per slab: start into `cells`.
    slab_start: Vec<u32>,
    /// Cells of every slab, bottom to top: floor segment and site index.
    cells: Vec<(Floor<T>, u32)>,
}

fn cross<T: Scalar>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Convex hull of points sorted by `(x, id)`, counter-clockwise, without
/// collinear vertices or duplicates.
pub fn convex_hull<T: Scalar>(sorted: &[Point<T>]) -> Vec<Point<T>> {
    let mut pts = sorted.to_vec();
    // input is x-sorted already; this only reorders runs of equal x by y
    pts.sort_by(|a, b| cmp(a.x, b.x).then(cmp(a.y, b.y)));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Point<T>> = Vec::with_capacity(2 * pts.len());
    let push = |hull: &mut Vec<Point<T>>, p: &Point<T>, floor: usize| {
        while hull.len() >= floor && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= T::zero() {
            hull.pop();
        }
        hull.push(*p);
    };
    for p in &pts {
        push(&mut hull, p, 2);
    }
    // the upper chain must not pop back into the lower one
    let floor = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        push(&mut hull, p, floor);
    }
    hull.pop();
    hull
}

/// Clips a convex polygon to `{ q : a*x + b*y >= c }`.
fn clip<T: Scalar>(poly: &[(T, T)], a: T, b: T, c: T) -> Vec<(T, T)> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let val = |p: (T, T)| a * p.0 + b * p.1 - c;
    for k in 0..poly.len() {
        let (p, q) = (poly[k], poly[(k + 1) % poly.len()]);
        let (vp, vq) = (val(p), val(q));
        let zero = T::zero();
        if vp >= zero {
            out.push(p);
        }
        if (vp >= zero) != (vq >= zero) {
            let t = vp / (vp - vq);
            out.push((p.0 + (q.0 - p.0) * t, p.1 + (q.1 - p.1) * t));
        }
    }
    out
}

impl<T: Scalar> FarthestStruct<T> {
    /// Builds the structure for a non-empty point set sorted by `(x, id)`.
    pub fn build(sorted: &[Point<T>], bbox: BBox<T>) -> Result<Self> {
        if sorted.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let sites = convex_hull(sorted);
        let square = |p: &Point<T>| p.x * p.x + p.y * p.y;
        let rect = vec![
            (bbox.xmin, bbox.ymin),
            (bbox.xmax, bbox.ymin),
            (bbox.xmax, bbox.ymax),
            (bbox.xmin, bbox.ymax),
        ];
        let two = T::lit(2.0);
        let mut polys = Vec::with_capacity(sites.len());
        for (i, si) in sites.iter().enumerate() {
            let mut poly = rect.clone();
            for (j, sj) in sites.iter().enumerate() {
                if i == j || poly.is_empty() {
                    continue;
                }
                poly = clip(&poly, two * (sj.x - si.x), two * (sj.y - si.y), square(sj) - square(si));
            }
            polys.push(poly);
        }

        let mut slab_x: Vec<T> = polys.iter().flatten().map(|v| v.0).collect();
        slab_x.push(bbox.xmin);
        slab_x.push(bbox.xmax);
        slab_x.sort_by(|a, b| cmp(*a, *b));
        slab_x.dedup();

        let mut slab_start = Vec::with_capacity(slab_x.len());
        let mut cells = Vec::new();
        for w in slab_x.windows(2) {
            slab_start.push(cells.len() as u32);
            let xm = w[0] + (w[1] - w[0]) / two;
            let mut here: Vec<(T, Floor<T>, u32)> = Vec::new();
            for (site, poly) in polys.iter().enumerate() {
                let mut best: Option<(T, Floor<T>)> = None;
                for k in 0..poly.len() {
                    let (p, q) = (poly[k], poly[(k + 1) % poly.len()]);
                    let (lo, hi) = if p.0 < q.0 { (p.0, q.0) } else { (q.0, p.0) };
                    if !(lo < xm && xm < hi) {
                        continue;
                    }
                    let f = Floor { x0: p.0, y0: p.1, x1: q.0, y1: q.1 };
                    let y = f.y_at(xm);
                    if best.is_none_or(|(by, _)| y < by) {
                        best = Some((y, f));
                    }
                }
                if let Some((y, f)) = best {
                    here.push((y, f, site as u32));
                }
            }
            here.sort_by(|a, b| cmp(a.0, b.0));
            cells.extend(here.into_iter().map(|(_, f, s)| (f, s)));
        }
        slab_start.push(cells.len() as u32);
        Ok(Self { sites, bbox, slab_x, slab_start, cells })
    }

    pub fn hull(&self) -> &[Point<T>] {
        &self.sites
    }

    fn better(&self, q: &Point<T>, a: usize, b: usize) -> usize {
        let (da, db) = (self.sites[a].dist2(q.x, q.y), self.sites[b].dist2(q.x, q.y));
        if db > da || (db == da && self.sites[b].id < self.sites[a].id) {
            b
        } else {
            a
        }
    }

    fn naive(&self, q: &Point<T>) -> Point<T> {
        let best = (1..self.sites.len()).fold(0, |best, k| self.better(q, best, k));
        self.sites[best]
    }

    /// A point of maximum distance from `q` (ties by smallest id).
    ///
    /// Queries outside the clipping box fall back to scanning the hull.
    pub fn farthest_point(&self, q: &Point<T>) -> Point<T> {
        if self.sites.len() == 1 || !self.bbox.contains(q.x, q.y) || self.slab_x.len() < 2 {
            return self.naive(q);
        }
        let slabs = self.slab_x.len() - 1;
        let s = self.slab_x[1..].partition_point(|&e| e < q.x).min(slabs - 1);
        let (a, b) = (self.slab_start[s] as usize, self.slab_start[s + 1] as usize);
        let cells = &self.cells[a..b];
        if cells.is_empty() {
            return self.naive(q);
        }
        let j = cells.partition_point(|(f, _)| f.y_at(q.x) <= q.y).saturating_sub(1);
        let mut best = cells[j].1 as usize;
        for k in [j.wrapping_sub(1), j + 1] {
            if k < cells.len() {
                best = self.better(q, best, cells[k].1 as usize);
            }
        }
        self.sites[best]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point<f64>> {
        let mut p: Vec<_> = v.iter().enumerate().map(|(i, &(x, y))| Point::new(x, y, i)).collect();
        p.sort_by(Point::x_order);
        p
    }

    const BOX: BBox<f64> = BBox { xmin: -10.0, ymin: -10.0, xmax: 10.0, ymax: 10.0 };

    #[test]
    fn hull_drops_interior_and_collinear() {
        let h = convex_hull(&pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (1.0, 1.0), (1.0, 0.2)]));
        assert_eq!(h.len(), 3);
        let line = convex_hull(&pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]));
        assert_eq!(line.len(), 2);
    }

    #[test]
    fn examples() {
        let fs = FarthestStruct::build(&pts(&[(0.0, 1.0)]), BOX).unwrap();
        assert_eq!(fs.farthest_point(&Point::new(0.0, -1.0, 0)).id, 0);
        let fs = FarthestStruct::build(&pts(&[(-1.0, 1.0), (1.0, 1.0)]), BOX).unwrap();
        let far = fs.farthest_point(&Point::new(-2.0, 0.0, 0));
        assert_eq!((far.x, far.y), (1.0, 1.0));
        assert!(matches!(FarthestStruct::<f64>::build(&[], BOX), Err(Error::EmptyPointSet)));
    }

    #[test]
    fn matches_naive_scan() {
        let mut state = 99u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 8.0 - 4.0
        };
        for _ in 0..20 {
            let raw: Vec<(f64, f64)> = (0..20).map(|_| (next(), next().abs())).collect();
            let p = pts(&raw);
            let fs = FarthestStruct::build(&p, BOX).unwrap();
            for _ in 0..100 {
                let q = Point::new(next() * 2.0, -next().abs(), 0);
                let got = fs.farthest_point(&q);
                let want = p.iter().map(|s| s.dist2(q.x, q.y)).fold(0.0, f64::max);
                assert_eq!(got.dist2(q.x, q.y), want);
            }
        }
    }
}
