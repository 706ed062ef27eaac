//! Exact minimum-cardinality disk coverage for line-separable instances.
//!
//! Points lie on or above a horizontal line, every region (a disk centred on
//! or below the line, or a lower half-plane) is only relevant through its part
//! above the line, and any two region boundaries cross at most once there.
//! Under these conditions a minimum cover is found by
//!
//! 1. dropping contained regions and sorting the rest by their leftmost point,
//! 2. locating the first and last region covering each point ([`sigma`]),
//! 3. discarding every *prunable* region ([`prune`]),
//! 4. reducing the survivors to segments on the line and covering the
//!    projected points greedily ([`reduce`]).
//!
//! The core is generic over the coordinate type (see [`Scalar`]); the aliases
//! at the crate root fix it to `f64`, which is what the file formats use.

pub mod error;
pub mod geom;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod prune;
pub mod reduce;
pub mod scalar;
pub mod sigma;

pub use error::{Error, Result};
pub use instance::Variant;
pub use reduce::{Algo, SolveOptions, Status};
pub use scalar::Scalar;
pub use sigma::SigmaBackend;
pub use prune::PruneMode;

/// Input point with `f64` coordinates.
pub type Point = geom::Point<f64>;
/// Disk or lower half-plane with `f64` coordinates.
pub type Region = geom::Region<f64>;
/// Region geometry with `f64` coordinates.
pub type Shape = geom::Shape<f64>;
/// Problem instance with `f64` coordinates.
pub type Instance = instance::Instance<f64>;
/// Pruned and sorted region list with `f64` coordinates.
pub type SortedInstance = instance::SortedInstance<f64>;
/// Optimal cover or infeasibility witness.
pub type Solution = reduce::Solution;
