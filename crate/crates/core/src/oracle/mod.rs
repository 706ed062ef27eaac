//! Brute-force reference implementations and instance generators.
//!
//! Everything here evaluates the definitions directly, with no sharing with
//! the indexed fast paths, so the two can be compared in tests.

mod gen;

pub use gen::{gen_instance, GenParams};

use crate::error::{Error, Result};
use crate::geom::{point_in_region, Point};
use crate::instance::{normalize, Instance, SortedInstance};
use crate::reduce::Solution;
use crate::scalar::Scalar;
use crate::sigma::SigmaTable;

/// Largest region count [`brute_min_cover`] accepts.
pub const GUARD: usize = 20;

/// σ pairs by scanning every region for every point.
pub fn brute_sigma<T: Scalar>(si: &SortedInstance<T>, points: &[Point<T>]) -> SigmaTable {
    let entries = points
        .iter()
        .map(|p| {
            let first = si.kept.iter().position(|s| point_in_region(s, p))?;
            let last = si.kept.iter().rposition(|s| point_in_region(s, p))?;
            Some((first, last))
        })
        .collect();
    SigmaTable { entries }
}

/// Regions `i` with a point outside them whose σ range contains `i`.
pub fn brute_prunable<T: Scalar>(si: &SortedInstance<T>, points: &[Point<T>], sig: &SigmaTable) -> Vec<usize> {
    (0..si.m())
        .filter(|&i| {
            points.iter().zip(&sig.entries).any(|(p, e)| {
                matches!(e, Some((s1, s2)) if *s1 <= i && i <= *s2) && !point_in_region(&si.kept[i], p)
            })
        })
        .collect()
}

/// `(a(i), b(i))` straight from their definition: the largest (smallest)
/// 1-based index of a point outside region `i` covered by a region before
/// (after) it. `points` must be in `(x, id)` order.
pub fn brute_ab<T: Scalar>(si: &SortedInstance<T>, points: &[Point<T>], i: usize) -> (usize, usize) {
    let s = &si.kept[i];
    let outside = |p: &Point<T>| !point_in_region(s, p);
    let before = |p: &Point<T>| si.kept[..i].iter().any(|t| point_in_region(t, p));
    let after = |p: &Point<T>| si.kept[i + 1..].iter().any(|t| point_in_region(t, p));
    let a = (1..=points.len()).rev().find(|&j| outside(&points[j - 1]) && before(&points[j - 1])).unwrap_or(0);
    let b = (1..=points.len()).find(|&j| outside(&points[j - 1]) && after(&points[j - 1])).unwrap_or(points.len() + 1);
    (a, b)
}

/// Regions with `a(i) >= b(i)` under [`brute_ab`].
pub fn ab_prunable<T: Scalar>(si: &SortedInstance<T>, points: &[Point<T>]) -> Vec<usize> {
    (0..si.m())
        .filter(|&i| {
            let (a, b) = brute_ab(si, points, i);
            a >= b
        })
        .collect()
}

/// Which points each region covers, as bitsets.
fn cover_masks<T: Scalar>(inst: &Instance<T>) -> Vec<Vec<u64>> {
    let words = inst.n().div_ceil(64);
    inst.regions
        .iter()
        .map(|s| {
            let mut bits = vec![0u64; words];
            for (k, p) in inst.points.iter().enumerate() {
                if point_in_region(s, p) {
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
            bits
        })
        .collect()
}

/// Minimum cover by enumerating subsets in increasing size.
pub fn brute_min_cover<T: Scalar>(inst: &Instance<T>) -> Result<Solution> {
    let m = inst.m();
    if m > GUARD {
        return Err(Error::GuardExceeded { m, limit: GUARD });
    }
    let inst = normalize(inst)?;
    let n = inst.n();
    let masks = cover_masks(&inst);
    let words = n.div_ceil(64);
    let full: Vec<u64> =
        (0..words).map(|w| if w + 1 < words || n % 64 == 0 { u64::MAX } else { (1u64 << (n % 64)) - 1 }).collect();

    let mut all = vec![0u64; words];
    for mask in &masks {
        all.iter_mut().zip(mask).for_each(|(a, b)| *a |= b);
    }
    let uncovered = (0..n).filter(|&k| all[k / 64] & (1 << (k % 64)) == 0);
    if let Some(id) = uncovered.map(|k| inst.points[k].id).min() {
        return Ok(Solution::infeasible(id));
    }

    let mut acc = vec![0u64; words];
    for size in 0..=m {
        if size == 0 {
            if n == 0 {
                return Ok(Solution::optimal(Vec::new()));
            }
            continue;
        }
        // subsets of `size` elements in increasing bitmask order
        let mut set: u32 = (1u32 << size) - 1;
        while set < (1u32 << m) {
            acc.iter_mut().for_each(|a| *a = 0);
            for (r, mask) in masks.iter().enumerate() {
                if set & (1 << r) != 0 {
                    acc.iter_mut().zip(mask).for_each(|(a, b)| *a |= b);
                }
            }
            if acc == full {
                let chosen = (0..m).filter(|&r| set & (1 << r) != 0).map(|r| inst.regions[r].id).collect();
                return Ok(Solution::optimal(chosen));
            }
            let low = set & set.wrapping_neg();
            let ripple = set + low;
            set = (((ripple ^ set) >> 2) / low) | ripple;
        }
    }
    unreachable!("the full region set covers every point")
}

/// Whether the regions with the given ids cover every point.
pub fn verify_cover<T: Scalar>(inst: &Instance<T>, chosen: &[usize]) -> Result<bool> {
    let mut picked = Vec::with_capacity(chosen.len());
    for &id in chosen {
        let s = inst.regions.iter().find(|s| s.id == id).ok_or(Error::UnknownRegion(id))?;
        picked.push(*s);
    }
    let norm = normalize(inst)?;
    let picked: Vec<_> =
        picked.iter().map(|s| *norm.regions.iter().find(|t| t.id == s.id).expect("ids survive normalization")).collect();
    Ok(norm.points.iter().all(|p| picked.iter().any(|s| point_in_region(s, p))))
}
