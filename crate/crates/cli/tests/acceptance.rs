//! Acceptance suite. Runs every criterion in order (timings must not share
//! the CPU with other tests), prints one PASS/FAIL line per criterion and
//! exits non-zero if any failed.

use std::process::ExitCode;
use std::time::Instant;

use sepcover::geom::{extent_keys, point_in_region};
use sepcover::instance::{normalize, prune_contained};
use sepcover::oracle::{
    ab_prunable, brute_ab, brute_min_cover, brute_prunable, brute_sigma, gen_instance, verify_cover, GenParams,
};
use sepcover::prune::{find_prunable, PruneMode};
use sepcover::reduce::{compute_ab, greedy_cover_1d, solve, OneDInstance};
use sepcover::sigma::{SigmaBackend, SigmaIndex, SigmaTable};
use sepcover::{Instance, Point, SolveOptions, Status, Variant};
use sepcover_cli::{run_bench, BenchSpec};

const VARIANTS: [Variant; 3] = [Variant::UnitDisk, Variant::LineConstrained, Variant::LowerHalfplane];

/// Outcome of one criterion: pass flag and a one-line summary.
type Outcome = (bool, String);

type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Cheap deterministic mixing for per-seed parameters.
fn mix(seed: u64, salt: u64) -> u64 {
    let mut z = seed.wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn pick(seed: u64, salt: u64, lo: usize, hi: usize) -> usize {
    lo + (mix(seed, salt) % (hi - lo + 1) as u64) as usize
}

fn generate(v: Variant, n: usize, m: usize, seed: u64, feasible: bool) -> Instance {
    let density = 1.0 + (mix(seed, 99) % 4) as f64;
    let mut gp = GenParams::new(v, n, m, seed).with_density(density);
    gp.feasible = feasible;
    gen_instance(&gp).expect("generator")
}

fn native(v: Variant) -> PruneMode {
    match v {
        Variant::UnitDisk => PruneMode::Cap,
        Variant::LowerHalfplane => PruneMode::Dual,
        _ => PruneMode::Fvd,
    }
}

fn a1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut agree, mut total, mut first_bad) = (0, 0, None);
    for v in VARIANTS {
        for seed in 0..1000u64 {
            let inst = generate(v, pick(seed, 1, 1, 10), pick(seed, 2, 1, 12), seed, true);
            let want = brute_min_cover(&inst).expect("m <= 12");
            let got = solve(&inst, &SolveOptions::default()).expect("generated instances are valid");
            total += 1;
            if got.status == want.status && got.size() == want.size() {
                agree += 1;
            } else if first_bad.is_none() {
                first_bad = Some(format!("{v} seed {seed}: {} vs {}", got.size(), want.size()));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = agree == total && secs < 300.0;
    let mut msg = format!("solve size equals brute-force minimum on {agree}/{total} instances ({secs:.1}s)");
    if let Some(b) = first_bad {
        msg.push_str(&format!("; first mismatch {b}"));
    }
    (ok, msg)
}

/// The 200 instances shared by A2 and A3; a quarter place points anywhere.
fn mid_instances() -> Vec<(u64, Instance)> {
    (0..200u64)
        .map(|seed| {
            let v = VARIANTS[seed as usize % 3];
            (seed, generate(v, pick(seed, 3, 1, 500), pick(seed, 4, 1, 500), 1000 + seed, seed % 4 != 0))
        })
        .collect()
}

fn a2_sigma_equivalence(cases: &[(u64, Instance)]) -> Outcome {
    let (mut agree, mut uncovered) = (0, 0);
    let mut first_bad = None;
    for (seed, inst) in cases {
        let si = prune_contained(&normalize(inst).unwrap());
        let want = brute_sigma(&si, &inst.points);
        uncovered += want.entries.iter().filter(|e| e.is_none()).count();
        let same = [SigmaBackend::Binary, SigmaBackend::Cascade]
            .into_iter()
            .all(|b| SigmaIndex::build(&si, b).table(&inst.points) == want);
        if same {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(*seed);
        }
    }
    let ok = agree == cases.len();
    let mut msg = format!(
        "binary and cascade sigma match the scan on {agree}/{} instances ({uncovered} uncovered points)",
        cases.len()
    );
    if let Some(s) = first_bad {
        msg.push_str(&format!("; first mismatch seed {s}"));
    }
    (ok, msg)
}

fn a3_prunable_equivalence(cases: &[(u64, Instance)]) -> Outcome {
    let (mut agree, mut prunable) = (0, 0);
    let mut first_bad = None;
    for (seed, inst) in cases {
        let si = prune_contained(&normalize(inst).unwrap());
        let full = brute_sigma(&si, &inst.points);
        let covered: Vec<(Point, _)> =
            inst.points.iter().zip(&full.entries).filter(|(_, e)| e.is_some()).map(|(p, e)| (*p, *e)).collect();
        let pts: Vec<Point> = covered.iter().map(|c| c.0).collect();
        let sig = SigmaTable { entries: covered.iter().map(|c| c.1).collect() };
        let want = brute_prunable(&si, &pts, &sig);
        prunable += want.len();
        let same = [native(inst.variant), PruneMode::Naive]
            .into_iter()
            .all(|mode| find_prunable(&si, &pts, &sig, mode).ok().as_ref() == Some(&want));
        if same {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(*seed);
        }
    }
    let ok = agree == cases.len();
    let mut msg = format!(
        "native and naive prunable sets match the scan on {agree}/{} instances ({prunable} prunable regions)",
        cases.len()
    );
    if let Some(s) = first_bad {
        msg.push_str(&format!("; first mismatch seed {s}"));
    }
    (ok, msg)
}

fn brute_1d(xs: &[f64], iv: &[(f64, f64, usize)]) -> Option<usize> {
    (0u32..1 << iv.len())
        .filter(|set| xs.iter().all(|&x| (0..iv.len()).any(|k| set & (1 << k) != 0 && iv[k].0 <= x && x <= iv[k].1)))
        .map(|set| set.count_ones() as usize)
        .min()
}

fn a4_invariants() -> Outcome {
    let mut failures: Vec<String> = Vec::new();
    let mut note = |what: &str, detail: String| {
        if failures.len() < 5 {
            failures.push(format!("{what}: {detail}"));
        }
    };
    let mut checked = 0;
    for v in VARIANTS {
        for seed in 0..300u64 {
            let inst = generate(v, pick(seed, 5, 1, 60), pick(seed, 6, 1, 40), 5000 + seed, true);
            let si = prune_contained(&inst);
            let keys: Vec<_> = si.kept.iter().map(|s| extent_keys(s).unwrap()).collect();
            if !keys.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1) {
                note("extent order", format!("{v} seed {seed}"));
            }
            let pts = inst.x_sorted_points();
            let sig = brute_sigma(&si, &pts).complete().expect("feasible");
            let prunable = ab_prunable(&si, &pts);
            let survivors: Vec<usize> = (0..si.m()).filter(|i| !prunable.contains(i)).collect();
            for (i, a, b) in compute_ab(&sig, si.m(), &survivors).iter() {
                if (a, b) != brute_ab(&si, &pts, i) {
                    note("a/b sweep", format!("{v} seed {seed} region {i}"));
                }
                if !pts[a..b - 1].iter().all(|p| point_in_region(&si.kept[i], p)) {
                    note("interior points", format!("{v} seed {seed} region {i}"));
                }
            }
            let sol = solve(&inst, &SolveOptions::default()).unwrap();
            if sol.status != Status::Optimal || !verify_cover(&inst, &sol.chosen).unwrap() {
                note("verify", format!("{v} seed {seed}"));
            }
            checked += 1;
        }
    }
    for seed in 0..1000u64 {
        let xs: Vec<f64> = (0..pick(seed, 7, 0, 12)).map(|k| pick(seed, 100 + k as u64, 0, 20) as f64).collect();
        let iv: Vec<(f64, f64, usize)> = (0..pick(seed, 8, 0, 12))
            .map(|k| {
                let lo = pick(seed, 200 + k as u64, 0, 20) as f64;
                (lo, lo + pick(seed, 300 + k as u64, 0, 8) as f64, k)
            })
            .collect();
        let got = greedy_cover_1d(&OneDInstance::from_intervals(&xs, &iv)).ok().map(|c| c.len());
        if got != brute_1d(&xs, &iv) {
            note("greedy 1D", format!("seed {seed}"));
        }
    }
    let ok = failures.is_empty();
    let msg = if ok {
        format!("extent order, a/b sweep, interior points and verify hold on {checked} instances; greedy 1D optimal on 1000")
    } else {
        failures.join("; ")
    };
    (ok, msg)
}

fn a5_scaling() -> Outcome {
    let start = Instant::now();
    let spec = BenchSpec {
        variant: Variant::UnitDisk,
        exps: 16..=19,
        n: None,
        m: None,
        reps: 5,
        seed: 7,
        density: 4.0,
        sigma: vec![SigmaBackend::Cascade],
        prune: vec![PruneMode::Cap],
    };
    let records = run_bench(&spec).expect("bench");
    let totals: Vec<(usize, f64)> = records.iter().filter(|r| r.stage == "total").map(|r| (r.n, r.millis)).collect();
    let ratios: Vec<f64> = totals.windows(2).map(|w| w[1].1 / w[0].1).collect();
    let secs = start.elapsed().as_secs_f64();
    let ok = totals.len() == 4 && ratios.iter().all(|&r| r <= 2.6) && secs < 600.0;
    let times: Vec<String> = totals.iter().map(|(n, t)| format!("{n}:{t:.0}ms")).collect();
    let ratios: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
    (ok, format!("median totals {} ratios [{}] (bound 2.6, ladder {secs:.0}s)", times.join(" "), ratios.join(", ")))
}

fn a6_reflection() -> Outcome {
    let mut agree = 0;
    let mut first_bad = None;
    for seed in 0..100u64 {
        let inst = generate(Variant::LineConstrained, pick(seed, 9, 1, 60), pick(seed, 10, 1, 40), 9000 + seed, true);
        let mut flipped = inst.clone();
        for (k, p) in flipped.points.iter_mut().enumerate() {
            if mix(seed, 400 + k as u64) % 2 == 1 {
                p.y = -p.y;
            }
        }
        let a = solve(&inst, &SolveOptions::default()).unwrap();
        let b = solve(&flipped, &SolveOptions::default()).unwrap();
        if a.status == Status::Optimal && a.size() == b.size() && b.status == Status::Optimal {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(seed);
        }
    }
    let mut msg = format!("optimum unchanged after reflecting random point subsets on {agree}/100 instances");
    if let Some(s) = first_bad {
        msg.push_str(&format!("; first mismatch seed {s}"));
    }
    (agree == 100, msg)
}

fn a7_infeasibility() -> Outcome {
    let mut correct = 0;
    for seed in 0..100u64 {
        let v = VARIANTS[seed as usize % 3];
        let base = generate(v, pick(seed, 11, 1, 40), pick(seed, 12, 1, 30), 12000 + seed, true);
        // a point above every region at some abscissa
        let x = pick(seed, 13, 0, 100) as f64 / 10.0;
        let top = base
            .regions
            .iter()
            .filter_map(|s| sepcover::geom::upper_boundary_y(s, x))
            .fold(0.0f64, f64::max);
        let mut pts: Vec<(f64, f64)> = base.points.iter().map(|p| (p.x, p.y)).collect();
        let at = pick(seed, 14, 0, pts.len());
        pts.insert(at, (x, top + 1.0));
        let shapes = base.regions.iter().map(|s| s.shape).collect();
        let inst = Instance::new(v, 0.0, &pts, shapes);
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        if sol.status == Status::Infeasible && sol.witness == Some(at) {
            correct += 1;
        }
    }
    (correct == 100, format!("infeasible with the planted witness on {correct}/100 instances"))
}

fn main() -> ExitCode {
    let cases = mid_instances();
    let criteria: Vec<Criterion> = vec![
        ("A1", "oracle equivalence", Box::new(a1_oracle_equivalence)),
        ("A2", "sigma equivalence", Box::new(|| a2_sigma_equivalence(&cases))),
        ("A3", "prunable equivalence", Box::new(|| a3_prunable_equivalence(&cases))),
        ("A4", "invariant suites", Box::new(a4_invariants)),
        ("A5", "scaling trend", Box::new(a5_scaling)),
        ("A6", "reflection", Box::new(a6_reflection)),
        ("A7", "infeasibility detection", Box::new(a7_infeasibility)),
    ];
    let mut failed = 0;
    for (id, name, check) in &criteria {
        let (ok, msg) = check();
        println!("{id} {} {name}: {msg}", if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
