//! Command-line front end: `gen`, `solve`, `verify`, `bench` and `render`.
//!
//! Exit codes: `0` success, `1` failed verification, `2` infeasible instance,
//! `64` malformed input or usage, `65` brute-force guard exceeded, `74` I/O.

pub mod bench;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use sepcover::io::{instance_to_json, parse_instance, parse_solution, solution_to_json};
use sepcover::oracle::{gen_instance, verify_cover, GenParams};
use sepcover::reduce::solve;
use sepcover::{Algo, Error, PruneMode, SigmaBackend, SolveOptions, Status, Variant};

pub use bench::{run_bench, BenchRecord, BenchSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_GUARD: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "sepcover", version, about = "Exact minimum disk cover for line-separated points and disks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Solve an instance and write the solution.
    Solve(SolveArgs),
    /// Check a solution against an instance.
    Verify(VerifyArgs),
    /// Time the pipeline on a ladder of generated instances.
    Bench(BenchArgs),
    /// Draw an instance (and optionally a solution) as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub variant: Variant,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Regions per radius of horizontal span.
    #[arg(long, default_value_t = 2.0)]
    pub density: f64,
    /// Sample points anywhere, not only inside some region.
    #[arg(long)]
    pub uniform: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct Backends {
    #[arg(long, default_value = "auto")]
    pub algo: Algo,
    #[arg(long, default_value = "binary")]
    pub sigma: SigmaBackend,
    #[arg(long)]
    pub prune: Option<PruneMode>,
}

impl Backends {
    fn options(&self) -> SolveOptions {
        SolveOptions { algo: self.algo, sigma: self.sigma, prune: self.prune }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Solution file; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub backends: Backends,
    /// Also render instance and solution.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "unit-disk")]
    pub variant: Variant,
    /// Smallest size as a power of two (n = m = 2^k).
    #[arg(long, default_value_t = 14)]
    pub min_exp: u32,
    #[arg(long, default_value_t = 17)]
    pub max_exp: u32,
    /// Fixed point count instead of the ladder size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Fixed region count instead of the ladder size.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4.0)]
    pub density: f64,
    /// Sigma backends to time (repeatable); defaults to both.
    #[arg(long)]
    pub sigma: Vec<SigmaBackend>,
    /// Prune backends to time (repeatable); defaults to the variant's own.
    #[arg(long)]
    pub prune: Vec<PruneMode>,
    /// CSV file; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Solution whose disks are highlighted.
    #[arg(long)]
    pub solution: Option<PathBuf>,
    #[arg(long)]
    pub svg: PathBuf,
}

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<Error>() {
        Some(Error::GuardExceeded { .. }) => EXIT_GUARD,
        Some(_) => EXIT_USAGE,
        None if e.downcast_ref::<std::io::Error>().is_some() => EXIT_IO,
        None => EXIT_USAGE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Self { code: exit_code(&error), error }
    }
}

/// Writes a whole file through a temporary sibling and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> anyhow::Result<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).context("writing stdout"),
    }
}

/// Runs one command, writing reports to `out`; returns the exit code on success.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Gen(a) => {
            let mut gp = GenParams::new(a.variant, a.n, a.m, a.seed).with_density(a.density);
            gp.feasible = !a.uniform;
            let inst = gen_instance(&gp)?;
            emit(Some(&a.out), &instance_to_json(&inst), out)?;
            Ok(EXIT_OK)
        }
        Command::Solve(a) => {
            let inst = parse_instance(&read(&a.input)?)?;
            let sol = solve(&inst, &a.backends.options())?;
            emit(a.out.as_deref(), &solution_to_json(&sol), out)?;
            if let Some(p) = &a.svg {
                write_atomic(p, svg::render(&inst, Some(&sol)).as_bytes())
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(if sol.status == Status::Optimal { EXIT_OK } else { EXIT_INFEASIBLE })
        }
        Command::Verify(a) => {
            let inst = parse_instance(&read(&a.input)?)?;
            let sol = parse_solution(&read(&a.solution)?)?;
            let (ok, msg) = verify(&inst, &sol)?;
            writeln!(out, "{msg}").context("writing stdout")?;
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Bench(a) => {
            let spec = BenchSpec {
                variant: a.variant,
                exps: a.min_exp..=a.max_exp,
                n: a.n,
                m: a.m,
                reps: a.reps,
                seed: a.seed,
                density: a.density,
                sigma: if a.sigma.is_empty() { vec![SigmaBackend::Binary, SigmaBackend::Cascade] } else { a.sigma },
                prune: a.prune,
            };
            let records = run_bench(&spec)?;
            emit(a.out.as_deref(), &bench::to_csv(&records), out)?;
            Ok(EXIT_OK)
        }
        Command::Render(a) => {
            let inst = parse_instance(&read(&a.input)?)?;
            let sol = a.solution.as_deref().map(|p| read(p).and_then(|t| Ok(parse_solution(&t)?))).transpose()?;
            write_atomic(&a.svg, svg::render(&inst, sol.as_ref()).as_bytes())
                .with_context(|| format!("writing {}", a.svg.display()))?;
            Ok(EXIT_OK)
        }
    }
}

/// Checks coverage (or, for an infeasible claim, that the witness is
/// uncovered) and that the size matches a fresh solve.
pub fn verify(inst: &sepcover::Instance, sol: &sepcover::Solution) -> anyhow::Result<(bool, String)> {
    let fresh = solve(inst, &SolveOptions::default())?;
    match sol.status {
        Status::Optimal => {
            let covers = match verify_cover(inst, &sol.chosen) {
                Ok(c) => c,
                Err(Error::UnknownRegion(id)) => return Ok((false, format!("unknown region id {id}"))),
                Err(e) => return Err(e.into()),
            };
            if !covers {
                return Ok((false, "chosen regions leave a point uncovered".into()));
            }
            if fresh.status != Status::Optimal || fresh.size() != sol.size() {
                return Ok((false, format!("cover of size {} is not minimum ({})", sol.size(), fresh.size())));
            }
            Ok((true, format!("ok: {} regions cover all {} points", sol.size(), inst.n())))
        }
        Status::Infeasible => {
            let Some(w) = sol.witness else {
                return Ok((false, "infeasible solution without a witness".into()));
            };
            let Some(p) = inst.points.iter().find(|p| p.id == w) else {
                return Ok((false, format!("unknown witness point {w}")));
            };
            let norm = sepcover::instance::normalize(inst)?;
            let q = norm.points.iter().find(|q| q.id == p.id).expect("ids survive normalization");
            if norm.regions.iter().any(|s| sepcover::geom::point_in_region(s, q)) {
                return Ok((false, format!("witness point {w} is covered")));
            }
            Ok((true, format!("ok: point {w} is covered by no region")))
        }
    }
}

/// Parses `args` and runs the command; reports errors on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    match execute(cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            f.code
        }
    }
}
