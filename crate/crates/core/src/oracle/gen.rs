//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{point_in_region, Point, Region, Shape};
use crate::instance::{Instance, Variant};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub variant: Variant,
    pub n: usize,
    pub m: usize,
    /// Centers (and half-plane anchors) lie in `x ∈ [0, span]`.
    pub span: f64,
    /// Radius of the unit-disk variant.
    pub radius: f64,
    /// Radius range of the line-constrained variant.
    pub radius_range: (f64, f64),
    pub seed: u64,
    /// Sample points only where some region covers them.
    pub feasible: bool,
}

impl GenParams {
    pub fn new(variant: Variant, n: usize, m: usize, seed: u64) -> Self {
        Self { variant, n, m, span: 10.0, radius: 1.0, radius_range: (0.5, 3.0), seed, feasible: true }
    }

    /// Span that keeps about `per_radius` centers within one radius of each
    /// other for `m` regions.
    pub fn with_density(mut self, per_radius: f64) -> Self {
        let r = match self.variant {
            Variant::LineConstrained => (self.radius_range.0 + self.radius_range.1) / 2.0,
            _ => self.radius,
        };
        self.span = (self.m as f64 * r / per_radius).max(r);
        self
    }
}

/// Tries per point before giving up.
const BUDGET: usize = 10_000;

fn sample_region(rng: &mut ChaCha8Rng, gp: &GenParams) -> Shape<f64> {
    match gp.variant {
        Variant::UnitDisk => {
            let r = gp.radius;
            Shape::Disk { cx: rng.gen_range(0.0..=gp.span), cy: -rng.gen_range(0.0..=0.9 * r), r }
        }
        Variant::LineConstrained => {
            let (lo, hi) = gp.radius_range;
            Shape::Disk { cx: rng.gen_range(0.0..=gp.span), cy: 0.0, r: rng.gen_range(lo..=hi) }
        }
        _ => {
            let slope = rng.gen_range(-1.0..=1.0);
            let x0 = rng.gen_range(0.0..=gp.span);
            let h = rng.gen_range(0.5..=3.0);
            Shape::LowerHalfPlane { slope, intercept: h - slope * x0 }
        }
    }
}

/// Uniform point in the box `x ∈ [x0, x1]`, `y ∈ [0, top]`.
fn in_box(rng: &mut ChaCha8Rng, x0: f64, x1: f64, top: f64) -> (f64, f64) {
    (rng.gen_range(x0..=x1), rng.gen_range(0.0..=top))
}

/// Deterministic instance for the given parameters.
///
/// Feasible instances pick a random region per point and sample inside it
/// (above the line) by rejection.
pub fn gen_instance(gp: &GenParams) -> Result<Instance<f64>> {
    if gp.variant == Variant::LineSeparable {
        return Err(Error::UnsupportedGenerator(gp.variant.as_str()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(gp.seed);
    let shapes: Vec<Shape<f64>> = (0..gp.m).map(|_| sample_region(&mut rng, gp)).collect();
    let regions: Vec<Region<f64>> = shapes.iter().enumerate().map(|(id, &shape)| Region { shape, id }).collect();
    let reach = match gp.variant {
        Variant::UnitDisk => gp.radius,
        Variant::LineConstrained => gp.radius_range.1,
        _ => 3.0,
    };

    let mut points = Vec::with_capacity(gp.n);
    for k in 0..gp.n {
        if !gp.feasible || regions.is_empty() {
            points.push(in_box(&mut rng, -reach, gp.span + reach, reach));
            continue;
        }
        let s = &regions[rng.gen_range(0..regions.len())];
        let (x0, x1, top) = match s.shape {
            Shape::Disk { cx, cy, r } => {
                // the part above the line sits over the chord
                let w = (r * r - cy * cy).max(0.0).sqrt();
                (cx - w, cx + w, cy + r)
            }
            Shape::LowerHalfPlane { slope, intercept } => {
                let (a, b) = (slope * -reach + intercept, slope * (gp.span + reach) + intercept);
                (-reach, gp.span + reach, a.max(b))
            }
        };
        let mut tries = 0;
        let p = loop {
            let (x, y) = in_box(&mut rng, x0, x1, top.max(0.0));
            if point_in_region(s, &Point::new(x, y, k)) {
                break (x, y);
            }
            tries += 1;
            if tries == BUDGET {
                return Err(Error::RejectionBudget { point: k, attempts: BUDGET });
            }
        };
        points.push(p);
    }
    Ok(Instance::new(gp.variant, 0.0, &points, shapes))
}
