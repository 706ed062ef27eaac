//! Timing ladder over generated instances.

use std::ops::RangeInclusive;
use std::time::Duration;

use sepcover::oracle::{gen_instance, GenParams};
use sepcover::reduce::solve_timed;
use sepcover::{Algo, PruneMode, Result, SigmaBackend, SolveOptions, Variant};

pub const CSV_HEADER: &str = "variant,n,m,sigma,prune,stage,millis,size,seed";

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub variant: Variant,
    /// Ladder sizes as powers of two.
    pub exps: RangeInclusive<u32>,
    /// Fixed counts overriding the ladder size.
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub reps: usize,
    pub seed: u64,
    pub density: f64,
    pub sigma: Vec<SigmaBackend>,
    /// Empty means the variant's own backend.
    pub prune: Vec<PruneMode>,
}

/// Median time of one stage for one ladder cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub variant: Variant,
    pub n: usize,
    pub m: usize,
    pub sigma: SigmaBackend,
    pub prune: PruneMode,
    pub stage: String,
    pub millis: f64,
    pub size: usize,
    pub seed: u64,
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort_unstable();
    v[v.len() / 2]
}

/// Generates one feasible instance per ladder size and times every backend
/// combination `reps` times; one record per size, backend pair and stage.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRecord>> {
    let reps = spec.reps.max(1);
    let prunes: Vec<Option<PruneMode>> =
        if spec.prune.is_empty() { vec![None] } else { spec.prune.iter().copied().map(Some).collect() };
    let mut out = Vec::new();
    for k in spec.exps.clone() {
        let size = 1usize << k;
        let (n, m) = (spec.n.unwrap_or(size), spec.m.unwrap_or(size));
        let inst = gen_instance(&GenParams::new(spec.variant, n, m, spec.seed).with_density(spec.density))?;
        for &sigma in &spec.sigma {
            for &prune in &prunes {
                let opts = SolveOptions { algo: Algo::Auto, sigma, prune };
                let mut stages: Vec<(&'static str, Vec<Duration>)> = Vec::new();
                let mut totals = Vec::with_capacity(reps);
                let mut found = 0;
                for _ in 0..reps {
                    let (sol, times) = solve_timed(&inst, &opts)?;
                    found = sol.size();
                    for &(name, d) in &times.stages {
                        match stages.iter_mut().find(|(s, _)| *s == name) {
                            Some((_, v)) => v.push(d),
                            None => stages.push((name, vec![d])),
                        }
                    }
                    totals.push(times.total());
                }
                stages.push(("total", totals));
                for (name, times) in stages {
                    out.push(BenchRecord {
                        variant: spec.variant,
                        n,
                        m,
                        sigma,
                        prune: opts.prune_mode(spec.variant),
                        stage: name.to_string(),
                        millis: median(times).as_secs_f64() * 1e3,
                        size: found,
                        seed: spec.seed,
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&format!(
            "{},{},{},{},{},{},{:.3},{},{}\n",
            r.variant, r.n, r.m, r.sigma, r.prune, r.stage, r.millis, r.size, r.seed
        ));
    }
    s
}
