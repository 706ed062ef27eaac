//! Instance model, normalization, validation and containment pruning.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{extent_keys, upper_crossings, ExtentKey, Point, Region, Shape, Tolerance};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Congruent disks centred on or below the line.
    UnitDisk,
    /// Disks centred on the line, arbitrary radii; points on either side.
    LineConstrained,
    /// Disks below the line whose upper arcs pairwise cross at most once.
    LineSeparable,
    /// Lower half-planes.
    LowerHalfplane,
}

impl Variant {
    pub const ALL: [Variant; 4] =
        [Variant::UnitDisk, Variant::LineConstrained, Variant::LineSeparable, Variant::LowerHalfplane];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::UnitDisk => "unit-disk",
            Variant::LineConstrained => "line-constrained",
            Variant::LineSeparable => "line-separable",
            Variant::LowerHalfplane => "lower-halfplane",
        }
    }

    pub fn uses_disks(self) -> bool {
        self != Variant::LowerHalfplane
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::Schema(format!("unknown variant `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T> {
    pub variant: Variant,
    /// y-coordinate of the separating line (0 after [`normalize`]).
    pub line_y: T,
    pub points: Vec<Point<T>>,
    pub regions: Vec<Region<T>>,
}

impl<T: Scalar> Instance<T> {
    /// Builds an instance, assigning ids in input order.
    pub fn new(variant: Variant, line_y: T, points: &[(T, T)], regions: Vec<Shape<T>>) -> Self {
        Self {
            variant,
            line_y,
            points: points.iter().enumerate().map(|(id, &(x, y))| Point::new(x, y, id)).collect(),
            regions: regions.into_iter().enumerate().map(|(id, shape)| Region { shape, id }).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn m(&self) -> usize {
        self.regions.len()
    }

    /// Converts coordinates to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Instance<U> {
        let c = |v: T| U::from(v).expect("coordinate representable");
        Instance {
            variant: self.variant,
            line_y: c(self.line_y),
            points: self.points.iter().map(|p| Point::new(c(p.x), c(p.y), p.id)).collect(),
            regions: self
                .regions
                .iter()
                .map(|s| Region {
                    id: s.id,
                    shape: match s.shape {
                        Shape::Disk { cx, cy, r } => Shape::Disk { cx: c(cx), cy: c(cy), r: c(r) },
                        Shape::LowerHalfPlane { slope, intercept } => {
                            Shape::LowerHalfPlane { slope: c(slope), intercept: c(intercept) }
                        }
                    },
                })
                .collect(),
        }
    }

    /// Points sorted by `(x, id)`.
    pub fn x_sorted_points(&self) -> Vec<Point<T>> {
        let mut pts = self.points.clone();
        pts.sort_by(Point::x_order);
        pts
    }

    /// Rejects non-finite coordinates and magnitudes above the coordinate limit.
    pub fn check_bounds(&self) -> Result<()> {
        let limit = T::lit(Tolerance::COORD_LIMIT);
        let check = |what, id, v: T| {
            if v.is_finite() && v.abs() <= limit {
                Ok(())
            } else {
                Err(Error::CoordinateOutOfRange { what, id, value: v.to_f64().unwrap_or(f64::NAN) })
            }
        };
        check("line", 0, self.line_y)?;
        for p in &self.points {
            check("point", p.id, p.x)?;
            check("point", p.id, p.y)?;
        }
        for s in &self.regions {
            match s.shape {
                Shape::Disk { cx, cy, r } => {
                    check("disk", s.id, cx)?;
                    check("disk", s.id, cy)?;
                    check("disk", s.id, r)?;
                }
                Shape::LowerHalfPlane { slope, intercept } => {
                    check("half-plane", s.id, slope)?;
                    check("half-plane", s.id, intercept)?;
                }
            }
        }
        Ok(())
    }
}

/// Moves the separating line to `y = 0` and brings every point on or above it.
///
/// Line-constrained instances reflect points below the line; the other
/// variants reject them. For half-plane instances the line is additionally
/// lowered by one unit whenever a point sits on it, so that every point is
/// strictly above the line (half-planes have no center tying them to the line).
pub fn normalize<T: Scalar>(raw: &Instance<T>) -> Result<Instance<T>> {
    raw.check_bounds()?;
    let zero = T::zero();
    let shift = raw.line_y;
    let mut points = Vec::with_capacity(raw.n());
    for p in &raw.points {
        let mut y = p.y - shift;
        if y < zero {
            if raw.variant == Variant::LineConstrained {
                y = -y;
            } else {
                return Err(Error::PointBelowLine { id: p.id });
            }
        }
        points.push(Point::new(p.x, y, p.id));
    }

    let mut regions = Vec::with_capacity(raw.m());
    let mut unit_radius = None;
    for s in &raw.regions {
        let shape = match (s.shape, raw.variant.uses_disks()) {
            (Shape::Disk { cx, cy, r }, true) => {
                let cy = cy - shift;
                if cy > zero {
                    return Err(Error::CenterAboveLine { id: s.id });
                }
                if r <= zero {
                    return Err(Error::InvalidRadius { id: s.id });
                }
                if raw.variant == Variant::UnitDisk {
                    match unit_radius {
                        None => unit_radius = Some(r),
                        Some(r0) if r0 != r => return Err(Error::MixedRadii { id: s.id }),
                        _ => {}
                    }
                }
                Shape::Disk { cx, cy, r }
            }
            (Shape::LowerHalfPlane { slope, intercept }, false) => {
                Shape::LowerHalfPlane { slope, intercept: intercept - shift }
            }
            _ => {
                return Err(Error::Schema(format!(
                    "region {} does not match the {} variant",
                    s.id, raw.variant
                )))
            }
        };
        regions.push(Region { shape, id: s.id });
    }

    if raw.variant == Variant::LowerHalfplane && points.iter().any(|p| p.y <= zero) {
        let one = T::one();
        for p in &mut points {
            p.y = p.y + one;
        }
        for s in &mut regions {
            if let Shape::LowerHalfPlane { intercept, .. } = &mut s.shape {
                *intercept = *intercept + one;
            }
        }
    }

    Ok(Instance { variant: raw.variant, line_y: zero, points, regions })
}

/// Findings of [`validate`]; empty means the instance is admissible.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Validation(self.violations))
        }
    }
}

/// Checks separation and family admissibility of a normalized instance.
///
/// The line-separable variant checks every pair of disks for the
/// single-crossing condition, which is quadratic in the number of disks.
pub fn validate<T: Scalar>(inst: &Instance<T>) -> ValidationReport {
    let zero = T::zero();
    let mut v = Vec::new();
    if let Err(e) = inst.check_bounds() {
        v.push(e.to_string());
    }
    for p in &inst.points {
        if p.y < zero {
            v.push(format!("point {} lies below the line", p.id));
        }
    }
    for s in &inst.regions {
        match s.shape {
            Shape::Disk { cy, r, .. } => {
                if !inst.variant.uses_disks() {
                    v.push(format!("disk {} in a half-plane instance", s.id));
                }
                if cy > zero {
                    v.push(format!("disk {} has its center above the line", s.id));
                }
                if r.partial_cmp(&zero) != Some(std::cmp::Ordering::Greater) {
                    v.push(format!("disk {} has a non-positive radius", s.id));
                }
                if inst.variant == Variant::LineConstrained && cy != zero {
                    v.push(format!("disk {} is not centred on the line", s.id));
                }
            }
            Shape::LowerHalfPlane { .. } => {
                if inst.variant.uses_disks() {
                    v.push(format!("half-plane {} in a disk instance", s.id));
                }
            }
        }
    }
    if inst.variant == Variant::UnitDisk {
        if let Some(r0) = inst.regions.first().and_then(Region::radius) {
            for s in &inst.regions {
                if s.radius().is_some_and(|r| r != r0) {
                    v.push(format!("disk {} radius differs from disk {}", s.id, inst.regions[0].id));
                }
            }
        }
    }
    if inst.variant == Variant::LineSeparable {
        for (i, a) in inst.regions.iter().enumerate() {
            for b in &inst.regions[i + 1..] {
                if upper_crossings(a, b).len() > 1 {
                    v.push(format!("disks {} and {} cross twice above the line", a.id, b.id));
                }
            }
        }
    }
    ValidationReport { violations: v }
}

/// Regions left after containment pruning, sorted by leftmost point.
///
/// Sorted positions are 0-based here; `orig_of[i]` is the input id of the
/// region at sorted position `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedInstance<T> {
    pub kept: Vec<Region<T>>,
    pub orig_of: Vec<usize>,
    /// Input ids removed because another region contains them (or because
    /// they do not reach above the line).
    pub dropped: Vec<usize>,
}

impl<T> SortedInstance<T> {
    pub fn m(&self) -> usize {
        self.kept.len()
    }
}

/// Removes every region contained in another and sorts the rest by leftmost
/// point, so that leftmost and rightmost points increase together.
///
/// Among identical regions the lowest id survives.
pub fn prune_contained<T: Scalar>(inst: &Instance<T>) -> SortedInstance<T> {
    let mut keyed: Vec<(ExtentKey<T>, ExtentKey<T>, usize)> = Vec::with_capacity(inst.m());
    let mut dropped = Vec::new();
    for (k, s) in inst.regions.iter().enumerate() {
        match extent_keys(s) {
            Some((l, r)) => keyed.push((l, r, k)),
            None => dropped.push(s.id),
        }
    }
    keyed.sort_by(|a, b| {
        a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(inst.regions[a.2].id.cmp(&inst.regions[b.2].id))
    });

    let mut kept = Vec::with_capacity(keyed.len());
    let mut reach: Option<ExtentKey<T>> = None;
    for (_, r, k) in keyed {
        if reach.is_some_and(|best| r <= best) {
            dropped.push(inst.regions[k].id);
        } else {
            reach = Some(r);
            kept.push(inst.regions[k]);
        }
    }
    dropped.sort_unstable();
    let orig_of = kept.iter().map(|s| s.id).collect();
    SortedInstance { kept, orig_of, dropped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{contains_region, point_in_region};

    fn disks(v: Variant, line_y: f64, pts: &[(f64, f64)], ds: &[(f64, f64, f64)]) -> Instance<f64> {
        let shapes = ds.iter().map(|&(cx, cy, r)| Shape::Disk { cx, cy, r }).collect();
        Instance::new(v, line_y, pts, shapes)
    }

    #[test]
    fn reflects_points_in_line_constrained() {
        let raw = disks(Variant::LineConstrained, 0.0, &[(1.0, -2.0)], &[(0.0, 0.0, 3.0)]);
        let n = normalize(&raw).unwrap();
        assert_eq!((n.points[0].x, n.points[0].y), (1.0, 2.0));
    }

    #[test]
    fn shifts_line_to_zero() {
        let raw = disks(Variant::UnitDisk, 1.0, &[(1.0, 2.0)], &[(0.0, 0.0, 3.0)]);
        let n = normalize(&raw).unwrap();
        assert_eq!((n.points[0].x, n.points[0].y), (1.0, 1.0));
        assert_eq!(n.line_y, 0.0);
        assert_eq!(n.regions[0].center(), Some((0.0, -1.0)));
    }

    #[test]
    fn normalize_errors() {
        let raw = disks(Variant::UnitDisk, 0.0, &[], &[(0.0, 0.0, 1.0), (1.0, 0.0, 2.0)]);
        assert!(matches!(normalize(&raw), Err(Error::MixedRadii { id: 1 })));
        let raw = disks(Variant::UnitDisk, 0.0, &[(0.0, -1.0)], &[(0.0, 0.0, 1.0)]);
        assert!(matches!(normalize(&raw), Err(Error::PointBelowLine { id: 0 })));
        let raw = disks(Variant::LineSeparable, 0.0, &[], &[(0.0, 0.5, 1.0)]);
        assert!(matches!(normalize(&raw), Err(Error::CenterAboveLine { id: 0 })));
        let raw = disks(Variant::UnitDisk, 0.0, &[(2e6, 1.0)], &[(0.0, 0.0, 1.0)]);
        assert!(matches!(normalize(&raw), Err(Error::CoordinateOutOfRange { .. })));
    }

    #[test]
    fn normalize_is_idempotent() {
        let raw = disks(
            Variant::LineConstrained,
            0.5,
            &[(1.0, -2.0), (0.0, 3.0)],
            &[(0.0, 0.5, 3.0), (2.0, 0.5, 1.0)],
        );
        let once = normalize(&raw).unwrap();
        assert_eq!(normalize(&once).unwrap(), once);

        let hp = Instance::new(
            Variant::LowerHalfplane,
            0.0,
            &[(0.0, 0.0), (1.0, 2.0)],
            vec![Shape::LowerHalfPlane { slope: 1.0, intercept: 1.0 }],
        );
        let once = normalize(&hp).unwrap();
        assert!(once.points.iter().all(|p| p.y > 0.0));
        assert_eq!(normalize(&once).unwrap(), once);
    }

    #[test]
    fn validate_examples() {
        let lc = disks(
            Variant::LineConstrained,
            0.0,
            &[(0.0, 1.0)],
            &[(0.0, 0.0, 1.0), (1.0, 0.0, 3.0), (5.0, 0.0, 0.5)],
        );
        assert!(validate(&lc).is_valid());

        let twice = disks(Variant::LineSeparable, 0.0, &[], &[(0.0, -0.1, 5.0), (0.0, -3.0, 7.0)]);
        let rep = validate(&twice);
        assert_eq!(rep.violations.len(), 1, "{rep:?}");

        let empty = disks(Variant::UnitDisk, 0.0, &[], &[(0.0, 0.0, 1.0)]);
        assert!(validate(&empty).is_valid());

        let off_line = disks(Variant::LineConstrained, 0.0, &[], &[(0.0, -1.0, 2.0)]);
        assert!(!validate(&off_line).is_valid());
    }

    #[test]
    fn prune_examples() {
        let inst = disks(Variant::LineConstrained, 0.0, &[], &[(0.0, 0.0, 3.0), (1.0, 0.0, 1.0)]);
        let si = prune_contained(&inst);
        assert_eq!(si.orig_of, vec![0]);
        assert_eq!(si.dropped, vec![1]);

        let e1 = disks(
            Variant::UnitDisk,
            0.0,
            &[],
            &[(3.0, 0.0, 2.0), (0.0, 0.0, 2.0), (6.0, 0.0, 2.0)],
        );
        let si = prune_contained(&e1);
        assert_eq!(si.orig_of, vec![1, 0, 2]);
        assert!(si.dropped.is_empty());

        let hp = Instance::new(
            Variant::LowerHalfplane,
            0.0,
            &[],
            vec![
                Shape::LowerHalfPlane { slope: 1.0, intercept: 0.0 },
                Shape::LowerHalfPlane { slope: 1.0, intercept: -1.0 },
            ],
        );
        let si = prune_contained(&hp);
        assert_eq!(si.orig_of, vec![0]);
        assert_eq!(si.dropped, vec![1]);
    }

    #[test]
    fn duplicates_keep_lowest_id() {
        let inst = disks(
            Variant::UnitDisk,
            0.0,
            &[],
            &[(1.0, 0.0, 1.0), (0.0, 0.0, 1.0), (1.0, 0.0, 1.0)],
        );
        let si = prune_contained(&inst);
        assert_eq!(si.orig_of, vec![1, 0]);
        assert_eq!(si.dropped, vec![2]);
    }

    #[test]
    fn half_plane_order_and_containment() {
        let shapes = [(-1.0, 3.0), (0.0, 2.0), (1.0, 0.0), (2.0, 0.0), (2.0, -10.0), (-3.0, 1.0)]
            .into_iter()
            .map(|(slope, intercept)| Shape::LowerHalfPlane { slope, intercept })
            .collect();
        let inst = Instance::new(Variant::LowerHalfplane, 0.0, &[], shapes);
        let si = prune_contained(&inst);
        // y <= 2x contains y <= x (same crossing, steeper)
        assert!(si.dropped.contains(&2));
        for w in si.kept.windows(2) {
            let (l0, r0) = extent_keys(&w[0]).unwrap();
            let (l1, r1) = extent_keys(&w[1]).unwrap();
            assert!(l0 < l1 && r0 < r1);
        }
        for a in &si.kept {
            for b in &si.kept {
                if a.id != b.id {
                    assert!(!contains_region(a, b));
                }
            }
        }
        // the key order matches what a sampled point set sees
        let inside = |s: &Region<f64>, x: f64, y: f64| point_in_region(s, &Point::new(x, y, 0));
        let y_le_x = inst.regions[2];
        let y_le_2x = inst.regions[3];
        for i in 0..100 {
            let (x, y) = (i as f64 * 0.37 - 10.0, (i % 7) as f64 * 0.9 + 0.01);
            assert!(!inside(&y_le_x, x, y) || inside(&y_le_2x, x, y));
        }
    }
}
