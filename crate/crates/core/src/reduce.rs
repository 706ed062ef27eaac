//! Reduction of the pruned instance to 1D interval covering, and the full
//! solve pipeline.
//!
//! Point indices in [`ABTable`] are 1-based positions in `(x, id)` order, with
//! `0` and `n + 1` as the "no such point" sentinels. Region indices are
//! 0-based sorted positions.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::instance::{normalize, prune_contained, validate, Instance, Variant};
use crate::oracle;
use crate::prune::{check_mode, find_prunable, PruneMode};
use crate::scalar::Scalar;
use crate::sigma::{SigmaBackend, SigmaIndex, SigmaPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Infeasible,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Optimal => "optimal",
            Status::Infeasible => "infeasible",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub status: Status,
    /// Original region ids, ascending.
    pub chosen: Vec<usize>,
    /// Id of a point no region covers, when infeasible.
    pub witness: Option<usize>,
}

impl Solution {
    pub fn optimal(mut chosen: Vec<usize>) -> Self {
        chosen.sort_unstable();
        Self { status: Status::Optimal, chosen, witness: None }
    }

    pub fn infeasible(witness: usize) -> Self {
        Self { status: Status::Infeasible, chosen: Vec::new(), witness: Some(witness) }
    }

    pub fn size(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

/// `a(i)` and `b(i)` for a set of surviving regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ABTable {
    pub n: usize,
    /// Sorted region positions, ascending.
    pub survivors: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl ABTable {
    pub fn len(&self) -> usize {
        self.survivors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.survivors.is_empty()
    }

    /// `(i, a(i), b(i))` triples.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.len()).map(move |k| (self.survivors[k], self.a[k], self.b[k]))
    }
}

/// Computes `a(i)`, the largest point index with `σ2 < i`, and `b(i)`, the
/// smallest with `σ1 > i`, for every survivor.
///
/// `sig` holds the σ pairs of the points in `(x, id)` order; `m` is the number
/// of sorted regions. Runs in `O(n + m)` with one bucket pass per side.
pub fn compute_ab(sig: &[SigmaPair], m: usize, survivors: &[usize]) -> ABTable {
    let n = sig.len();
    // left[k]: largest index whose σ2 is at most k - 1
    let mut left = vec![0usize; m + 1];
    // right[k]: smallest index whose σ1 is at least k
    let mut right = vec![n + 1; m + 1];
    for (pos, &(s1, s2)) in sig.iter().enumerate() {
        let j = pos + 1;
        left[s2 + 1] = left[s2 + 1].max(j);
        right[s1] = right[s1].min(j);
    }
    for k in 1..=m {
        left[k] = left[k].max(left[k - 1]);
    }
    for k in (0..m).rev() {
        right[k] = right[k].min(right[k + 1]);
    }
    let a = survivors.iter().map(|&i| left[i]).collect();
    let b = survivors.iter().map(|&i| right[i + 1]).collect();
    ABTable { n, survivors: survivors.to_vec(), a, b }
}

/// A segment covering the projected points at positions `first..=last`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<T> {
    pub first: usize,
    pub last: usize,
    pub lo: T,
    pub hi: T,
    pub owner: usize,
}

/// Points projected onto the line and the segments of the survivors.
///
/// Segments address points by position so that points sharing an abscissa
/// stay distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct OneDInstance<T> {
    /// Abscissas, ascending.
    pub xs: Vec<T>,
    pub ids: Vec<usize>,
    /// Sorted by `first`, then `owner`.
    pub segments: Vec<Segment<T>>,
}

impl<T: Scalar> OneDInstance<T> {
    /// Builds an instance from abscissas and `(lo, hi, owner)` intervals,
    /// covering every point with `lo <= x <= hi`. Empty intervals are skipped.
    pub fn from_intervals(xs: &[T], intervals: &[(T, T, usize)]) -> Self {
        let mut xs = xs.to_vec();
        xs.sort_by(|a, b| crate::scalar::cmp(*a, *b));
        let mut segments = Vec::new();
        for &(lo, hi, owner) in intervals {
            let first = xs.partition_point(|&x| x < lo);
            let end = xs.partition_point(|&x| x <= hi);
            if first < end {
                segments.push(Segment { first, last: end - 1, lo, hi, owner });
            }
        }
        segments.sort_by_key(|s| (s.first, s.owner));
        Self { ids: (0..xs.len()).collect(), xs, segments }
    }
}

/// One segment `[x(p_{a+1}), x(p_{b-1})]` per survivor with a non-empty
/// range. `owners[k]` labels the segment of the `k`-th survivor.
pub fn build_segments<T: Scalar>(ab: &ABTable, points: &[Point<T>], owners: &[usize]) -> OneDInstance<T> {
    let mut segments = Vec::with_capacity(ab.len());
    for (k, (_, a, b)) in ab.iter().enumerate() {
        if b <= a + 1 {
            continue;
        }
        let (first, last) = (a, b - 2);
        segments.push(Segment { first, last, lo: points[first].x, hi: points[last].x, owner: owners[k] });
    }
    segments.sort_by_key(|s| (s.first, s.owner));
    OneDInstance { xs: points.iter().map(|p| p.x).collect(), ids: points.iter().map(|p| p.id).collect(), segments }
}

/// Minimum set of segments covering every point, as owners in pick order.
///
/// Scans points left to right; at each uncovered point it takes, among the
/// segments starting at or before it, one reaching furthest right (smaller
/// owner on ties).
pub fn greedy_cover_1d<T>(inst: &OneDInstance<T>) -> Result<Vec<usize>> {
    let n = inst.xs.len();
    let segs = &inst.segments;
    let mut chosen = Vec::new();
    let mut best: Option<&Segment<T>> = None;
    let (mut pos, mut next) = (0, 0);
    while pos < n {
        while next < segs.len() && segs[next].first <= pos {
            let s = &segs[next];
            if best.is_none_or(|b| s.last > b.last || (s.last == b.last && s.owner < b.owner)) {
                best = Some(s);
            }
            next += 1;
        }
        match best {
            Some(b) if b.last >= pos => {
                chosen.push(b.owner);
                pos = b.last + 1;
            }
            _ => return Err(Error::Infeasible1d(inst.ids.get(pos).copied().unwrap_or(pos))),
        }
    }
    Ok(chosen)
}

/// Which pipeline to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algo {
    /// Picks the prune backend from the variant.
    #[default]
    Auto,
    General,
    Unit,
    Halfplane,
    /// Brute-force subset enumeration (small instances only).
    Oracle,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::General => "general",
            Algo::Unit => "unit",
            Algo::Halfplane => "halfplane",
            Algo::Oracle => "oracle",
        }
    }

    /// Prune backend used for `variant` when none is given explicitly.
    pub fn prune_mode(self, variant: Variant) -> PruneMode {
        match self {
            Algo::General => PruneMode::Fvd,
            Algo::Unit => PruneMode::Cap,
            Algo::Halfplane => PruneMode::Dual,
            Algo::Auto | Algo::Oracle => match variant {
                Variant::UnitDisk => PruneMode::Cap,
                Variant::LowerHalfplane => PruneMode::Dual,
                Variant::LineConstrained | Variant::LineSeparable => PruneMode::Fvd,
            },
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Algo::Auto),
            "general" => Ok(Algo::General),
            "unit" => Ok(Algo::Unit),
            "halfplane" => Ok(Algo::Halfplane),
            "oracle" => Ok(Algo::Oracle),
            _ => Err(Error::Schema(format!("unknown algorithm `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    pub algo: Algo,
    pub sigma: SigmaBackend,
    /// Overrides the backend chosen by `algo`.
    pub prune: Option<PruneMode>,
}

impl SolveOptions {
    pub fn prune_mode(&self, variant: Variant) -> PruneMode {
        self.prune.unwrap_or_else(|| self.algo.prune_mode(variant))
    }
}

/// Wall time per pipeline stage, in execution order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StageTimes {
    pub stages: Vec<(&'static str, Duration)>,
}

impl StageTimes {
    fn lap(&mut self, name: &'static str, since: &mut Instant) {
        let now = Instant::now();
        self.stages.push((name, now - *since));
        *since = now;
    }

    pub fn get(&self, name: &str) -> Option<Duration> {
        self.stages.iter().find(|(s, _)| *s == name).map(|&(_, d)| d)
    }

    pub fn total(&self) -> Duration {
        self.stages.iter().map(|&(_, d)| d).sum()
    }
}

/// Solves an instance exactly.
pub fn solve<T: Scalar>(inst: &Instance<T>, opts: &SolveOptions) -> Result<Solution> {
    solve_timed(inst, opts).map(|(s, _)| s)
}

/// [`solve`], also reporting the time spent in each stage.
pub fn solve_timed<T: Scalar>(inst: &Instance<T>, opts: &SolveOptions) -> Result<(Solution, StageTimes)> {
    let mut times = StageTimes::default();
    let mut clock = Instant::now();
    let norm = normalize(inst)?;
    validate(&norm).into_result()?;
    times.lap("normalize", &mut clock);

    if opts.algo == Algo::Oracle {
        let sol = oracle::brute_min_cover(&norm)?;
        times.lap("oracle", &mut clock);
        return Ok((sol, times));
    }

    let si = prune_contained(&norm);
    let mode = opts.prune_mode(norm.variant);
    check_mode(&si.kept, mode)?;
    let points = norm.x_sorted_points();
    times.lap("contain", &mut clock);

    let index = SigmaIndex::build(&si, opts.sigma);
    let table = index.table(&points);
    times.lap("sigma", &mut clock);
    let Some(sig) = table.complete() else {
        let witness = points.iter().zip(&table.entries).filter(|(_, e)| e.is_none()).map(|(p, _)| p.id).min();
        return Ok((Solution::infeasible(witness.expect("some point is uncovered")), times));
    };
    if points.is_empty() {
        return Ok((Solution::optimal(Vec::new()), times));
    }

    let prunable = find_prunable(&si, &points, &table, mode)?;
    let mut survivors = Vec::with_capacity(si.m() - prunable.len());
    let mut it = prunable.iter().peekable();
    for i in 0..si.m() {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            survivors.push(i);
        }
    }
    times.lap("prunable", &mut clock);

    let ab = compute_ab(&sig, si.m(), &survivors);
    let owners: Vec<usize> = survivors.iter().map(|&i| si.orig_of[i]).collect();
    let oned = build_segments(&ab, &points, &owners);
    times.lap("ab", &mut clock);

    let chosen = greedy_cover_1d(&oned)?;
    times.lap("greedy", &mut clock);
    Ok((Solution::optimal(chosen), times))
}
