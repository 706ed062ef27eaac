//! JSON file formats for instances and solutions.
//!
//! Instance:
//!
//! ```json
//! {"variant": "unit-disk", "line_y": 0.0,
//!  "points": [[x, y], ...],
//!  "disks": [[cx, cy, r], ...]}
//! ```
//!
//! `disks` is replaced by `"halfplanes": [[slope, intercept], ...]` for the
//! `lower-halfplane` variant. Array order defines the 0-based ids.
//!
//! Solution:
//!
//! ```json
//! {"status": "optimal", "size": 2, "disks": [0, 2], "witness": null}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Shape;
use crate::instance::{Instance, Variant};
use crate::reduce::{Solution, Status};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub variant: Variant,
    pub line_y: f64,
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disks: Option<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfplanes: Option<Vec<[f64; 2]>>,
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance<f64>> {
        let shapes = match (self.variant, self.disks, self.halfplanes) {
            (Variant::LowerHalfplane, None, Some(h)) => h
                .into_iter()
                .map(|[slope, intercept]| Shape::LowerHalfPlane { slope, intercept })
                .collect(),
            (Variant::LowerHalfplane, _, _) => {
                return Err(Error::Schema(
                    "lower-halfplane instances need `halfplanes` and no `disks`".into(),
                ))
            }
            (_, Some(d), None) => d.into_iter().map(|[cx, cy, r]| Shape::Disk { cx, cy, r }).collect(),
            (v, _, _) => {
                return Err(Error::Schema(format!("{v} instances need `disks` and no `halfplanes`")))
            }
        };
        let pts: Vec<(f64, f64)> = self.points.iter().map(|&[x, y]| (x, y)).collect();
        let inst = Instance::new(self.variant, self.line_y, &pts, shapes);
        inst.check_bounds()?;
        Ok(inst)
    }

    pub fn from_instance(inst: &Instance<f64>) -> Self {
        let mut disks = Vec::new();
        let mut halfplanes = Vec::new();
        for s in &inst.regions {
            match s.shape {
                Shape::Disk { cx, cy, r } => disks.push([cx, cy, r]),
                Shape::LowerHalfPlane { slope, intercept } => halfplanes.push([slope, intercept]),
            }
        }
        let hp = inst.variant == Variant::LowerHalfplane;
        Self {
            variant: inst.variant,
            line_y: inst.line_y,
            points: inst.points.iter().map(|p| [p.x, p.y]).collect(),
            disks: (!hp).then_some(disks),
            halfplanes: hp.then_some(halfplanes),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance<f64>> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    file.into_instance()
}

pub fn instance_to_json(inst: &Instance<f64>) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from_instance(inst))
        .expect("instance serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub status: Status,
    pub size: usize,
    pub disks: Vec<usize>,
    pub witness: Option<usize>,
}

impl From<&Solution> for SolutionFile {
    fn from(s: &Solution) -> Self {
        Self { status: s.status, size: s.chosen.len(), disks: s.chosen.clone(), witness: s.witness }
    }
}

impl SolutionFile {
    pub fn into_solution(self) -> Result<Solution> {
        if self.size != self.disks.len() {
            return Err(Error::Schema(format!(
                "solution size {} does not match {} listed disks",
                self.size,
                self.disks.len()
            )));
        }
        Ok(Solution { status: self.status, chosen: self.disks, witness: self.witness })
    }
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let file: SolutionFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    file.into_solution()
}

pub fn solution_to_json(sol: &Solution) -> String {
    let mut s = serde_json::to_string(&SolutionFile::from(sol)).expect("solution serializes");
    s.push('\n');
    s
}
