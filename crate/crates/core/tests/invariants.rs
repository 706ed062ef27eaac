use proptest::prelude::*;

use sepcover::geom::{contains_region, extent_keys, point_in_region};
use sepcover::instance::{normalize, prune_contained};
use sepcover::oracle::{brute_min_cover, gen_instance, verify_cover, GenParams};
use sepcover::reduce::{greedy_cover_1d, solve, OneDInstance};
use sepcover::{Instance, Shape, SolveOptions, Variant};

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::UnitDisk), Just(Variant::LineConstrained), Just(Variant::LowerHalfplane)]
}

fn generated() -> impl Strategy<Value = Instance> {
    (variant(), 0usize..12, 1usize..14, any::<u64>(), 1.0f64..5.0).prop_map(|(v, n, m, seed, d)| {
        gen_instance(&GenParams::new(v, n, m, seed).with_density(d)).unwrap()
    })
}

/// Smallest number of intervals covering every point, by subset enumeration.
fn brute_1d(xs: &[f64], iv: &[(f64, f64, usize)]) -> Option<usize> {
    (0u32..1 << iv.len())
        .filter(|set| {
            xs.iter().all(|&x| (0..iv.len()).any(|k| set & (1 << k) != 0 && iv[k].0 <= x && x <= iv[k].1))
        })
        .map(|set| set.count_ones() as usize)
        .min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn extents_strictly_increase_after_pruning(inst in generated()) {
        let si = prune_contained(&inst);
        let keys: Vec<_> = si.kept.iter().map(|s| extent_keys(s).unwrap()).collect();
        for w in keys.windows(2) {
            prop_assert!(w[0].0 < w[1].0 && w[0].1 < w[1].1);
        }
        for &id in &si.dropped {
            let s = &inst.regions[id];
            let vacuous = extent_keys(s).is_none();
            prop_assert!(vacuous || si.kept.iter().any(|k| contains_region(k, s)));
        }
        let again = prune_contained(&Instance { regions: si.kept.clone(), ..inst.clone() });
        prop_assert_eq!(again.kept, si.kept);
    }

    #[test]
    fn solve_is_optimal_and_verified(inst in generated()) {
        let got = solve(&inst, &SolveOptions::default()).unwrap();
        let want = brute_min_cover(&inst).unwrap();
        prop_assert_eq!(got.status, want.status);
        prop_assert_eq!(got.size(), want.size());
        if got.is_optimal() {
            prop_assert!(verify_cover(&inst, &got.chosen).unwrap());
        } else {
            let w = got.witness.unwrap();
            prop_assert!(inst.regions.iter().all(|s| !point_in_region(s, &inst.points[w])));
        }
    }

    #[test]
    fn adding_a_region_never_grows_the_optimum(inst in generated(), extra in 0usize..14) {
        let base = brute_min_cover(&inst).unwrap();
        let mut more = inst.clone();
        let mut extra_region = inst.regions[extra % inst.m()];
        extra_region.id = inst.m();
        if let Shape::Disk { cx, .. } = &mut extra_region.shape {
            *cx += 0.25;
        }
        more.regions.push(extra_region);
        let grown = brute_min_cover(&more).unwrap();
        if base.is_optimal() {
            prop_assert!(grown.is_optimal() && grown.size() <= base.size());
        }
    }

    #[test]
    fn reflecting_points_keeps_the_optimum(inst in generated(), mask in any::<u64>()) {
        prop_assume!(inst.variant == Variant::LineConstrained);
        let mut flipped = inst.clone();
        for (k, p) in flipped.points.iter_mut().enumerate() {
            if mask & (1 << (k % 64)) != 0 {
                p.y = -p.y;
            }
        }
        prop_assert_eq!(normalize(&flipped).unwrap(), normalize(&inst).unwrap());
        let a = solve(&inst, &SolveOptions::default()).unwrap();
        let b = solve(&flipped, &SolveOptions::default()).unwrap();
        prop_assert_eq!(a.size(), b.size());
    }

    #[test]
    fn greedy_1d_is_optimal(
        xs in prop::collection::vec(0u8..20, 0..12),
        iv in prop::collection::vec((0u8..20, 0u8..8), 0..12),
    ) {
        let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
        let iv: Vec<(f64, f64, usize)> =
            iv.into_iter().enumerate().map(|(k, (lo, len))| (f64::from(lo), f64::from(lo + len), k)).collect();
        let one = OneDInstance::from_intervals(&xs, &iv);
        match (greedy_cover_1d(&one), brute_1d(&xs, &iv)) {
            (Ok(chosen), Some(best)) => {
                prop_assert_eq!(chosen.len(), best);
                for &x in &xs {
                    prop_assert!(chosen.iter().any(|&k| iv[k].0 <= x && x <= iv[k].1));
                }
            }
            (Err(_), None) => {}
            (got, want) => prop_assert!(false, "greedy {:?} brute {:?}", got, want),
        }
    }

    #[test]
    fn f32_pipeline_agrees_on_well_separated_input(seed in any::<u64>()) {
        // integer coordinates are exact in both widths
        let mut rng = seed;
        let mut next = |k: u64| { rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (rng >> 33) % k };
        let shapes: Vec<Shape> = (0..8).map(|_| Shape::Disk { cx: next(20) as f64, cy: 0.0, r: 1.0 + next(4) as f64 }).collect();
        let pts: Vec<(f64, f64)> = (0..10).map(|_| (next(20) as f64, next(3) as f64)).collect();
        let inst = Instance::new(Variant::LineConstrained, 0.0, &pts, shapes);
        let a = solve(&inst, &SolveOptions::default()).unwrap();
        let b = solve(&inst.cast::<f32>(), &SolveOptions::default()).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.size(), b.size());
    }
}
