use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed instance: {0}")]
    Schema(String),

    #[error("{what} {id}: coordinate {value} is not finite or exceeds 1e6 in magnitude")]
    CoordinateOutOfRange { what: &'static str, id: usize, value: f64 },

    #[error("point {id} lies below the separating line")]
    PointBelowLine { id: usize },

    #[error("disk {id} has its center above the separating line")]
    CenterAboveLine { id: usize },

    #[error("disk {id} has a non-positive radius")]
    InvalidRadius { id: usize },

    #[error("unit-disk instance mixes radii (disk {id} differs from disk 0)")]
    MixedRadii { id: usize },

    #[error("instance failed validation: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("regions {0} and {1} coincide")]
    CoincidentRegions(usize, usize),

    #[error("regions {0} and {1} belong to different families")]
    MixedFamily(usize, usize),

    #[error("boundaries of regions {0} and {1} cross more than once above the line")]
    MultipleCrossings(usize, usize),

    #[error("farthest-point query on an empty point set")]
    EmptyPointSet,

    #[error("prune mode `{mode}` cannot be used with {variant} instances")]
    IncompatibleMode { mode: &'static str, variant: &'static str },

    #[error("point {id} is covered by no region")]
    UncoveredPoint { id: usize },

    #[error("brute-force oracle limited to {limit} regions, instance has {m}")]
    GuardExceeded { m: usize, limit: usize },

    #[error("unknown region id {0}")]
    UnknownRegion(usize),

    #[error("generator gave up after {attempts} attempts for point {point}")]
    RejectionBudget { point: usize, attempts: usize },

    #[error("no generator for the {0} variant")]
    UnsupportedGenerator(&'static str),

    #[error("1D instance infeasible at projected point {0}")]
    Infeasible1d(usize),
}
