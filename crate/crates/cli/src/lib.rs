//! Command-line driver: argument handling, the sweep pipeline and the
//! self-test suites.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::Parser;
use qc_core::chabauty::{sweep_with, Combination, ThetaFunction, SweepOptions, SweepReport};
use qc_core::coleman::ColemanIntegrals;
use qc_core::curve::{as_integer, parse_point, RationalPoint, WeierstrassCurve};
use qc_core::error::ChabautyError;
use qc_core::rigidcoh::FrobeniusData;

pub mod selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;

fn parse_combination(s: &str) -> Result<Combination, String> {
    Combination::parse(s).ok_or_else(|| format!("unknown combination {s:?}; expected rho, d2 or sign-flipped"))
}

/// Integral points of a rank-one elliptic curve, located as zeros of a
/// p-adic function.
#[derive(Parser, Debug, Clone)]
#[command(name = "qc", version)]
pub struct Args {
    /// Weierstrass coefficients a1,a2,a3,a4,a6.
    #[arg(long, env = "QC_CURVE", default_value = "0,0,1,-1,0", allow_hyphen_values = true)]
    pub curve: String,
    /// Odd prime of good reduction.
    #[arg(long, env = "QC_PRIME", default_value_t = 7)]
    pub prime: u32,
    /// Target p-adic precision N.
    #[arg(long, env = "QC_PREC", default_value_t = 12)]
    pub prec: i32,
    /// Integral non-torsion point X,Y.
    #[arg(long, env = "QC_GEN", default_value = "0,0", allow_hyphen_values = true)]
    pub gen: String,
    /// Brute-force search bound on |x|.
    #[arg(long, env = "QC_SEARCH_BOUND", default_value_t = 10_000)]
    pub search_bound: u64,
    /// Directory for cached Frobenius data.
    #[arg(long, env = "QC_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Parallel disk workers (default: available parallelism).
    #[arg(long, env = "QC_JOBS")]
    pub jobs: Option<usize>,
    /// Emit the report as JSON.
    #[arg(long, env = "QC_JSON")]
    pub json: bool,
    /// Also print the θ series of every disk.
    #[arg(long, env = "QC_DUMP_SERIES")]
    pub dump_series: bool,
    /// Run the self-test suites instead of a sweep.
    #[arg(long, env = "QC_SELFTEST")]
    pub selftest: bool,
    /// Keep wall-clock timings in the report (they are zeroed otherwise, so
    /// repeated runs produce identical output).
    #[arg(long, env = "QC_TIMINGS")]
    pub timings: bool,
    /// Write the report here as well as to stdout.
    #[arg(long, env = "QC_OUTPUT")]
    pub output: Option<PathBuf>,
    /// How D₂ and the single integrals combine into ρ.
    #[arg(long, env = "QC_COMBINATION", default_value = "rho", value_parser = parse_combination)]
    pub combination: Combination,
}

/// Validated inputs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub curve: WeierstrassCurve,
    pub p: u32,
    pub n: i32,
    pub gen: RationalPoint,
    pub search_bound: u64,
    pub cache_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub json: bool,
    pub dump_series: bool,
    pub timings: bool,
    pub output: Option<PathBuf>,
    pub combination: Combination,
}

/// What a run printed and how it should exit.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, msg: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: msg.into() + "\n" }
    }
}

impl RunConfig {
    pub fn from_args(args: &Args) -> Result<Self, String> {
        let curve = WeierstrassCurve::parse(&args.curve).map_err(|e| e.to_string())?;
        let p = args.prime;
        curve.check_prime(p).map_err(|e| e.to_string())?;
        if args.prec < 4 {
            return Err(format!("precision {} is too small (need at least 4)", args.prec));
        }
        let gen = parse_point(&args.gen).map_err(|e| e.to_string())?;
        if !curve.is_on_curve(&gen) {
            return Err(format!("generator ({}) is not on the curve", args.gen));
        }
        let (Some(x), Some(y)) = (gen.x(), gen.y()) else { unreachable!("parsed as affine") };
        if as_integer(x).is_none() || as_integer(y).is_none() {
            return Err(format!("generator ({}) is not integral", args.gen));
        }
        if curve.torsion_order(&gen).is_some() {
            return Err(ChabautyError::TorsionBasePoint.to_string());
        }
        Ok(RunConfig {
            curve,
            p,
            n: args.prec,
            gen,
            search_bound: args.search_bound,
            cache_dir: args.cache_dir.clone(),
            jobs: args.jobs,
            json: args.json,
            dump_series: args.dump_series,
            timings: args.timings,
            output: args.output.clone(),
            combination: args.combination,
        })
    }

    /// Frobenius data through the cache, then the Coleman integrals.
    pub fn integrals(&self) -> Result<(Arc<ColemanIntegrals>, bool, u64, u64), String> {
        let t0 = Instant::now();
        let (frob, hit) = FrobeniusData::load_or_compute(&self.curve, self.p, self.n, self.cache_dir.as_deref())
            .map_err(|e| e.to_string())?;
        let t1 = Instant::now();
        let ci = ColemanIntegrals::new(&self.curve, &frob).map_err(|e| e.to_string())?;
        let t2 = Instant::now();
        Ok((Arc::new(ci), hit, (t1 - t0).as_millis() as u64, (t2 - t1).as_millis() as u64))
    }
}

/// The full pipeline for one curve.
pub fn run_sweep(cfg: &RunConfig) -> Outcome {
    let (ci, hit, frob_ms, coleman_ms) = match cfg.integrals() {
        Ok(x) => x,
        Err(e) => return Outcome::failure(EXIT_PRECONDITION, e),
    };
    let opts = SweepOptions { search_bound: cfg.search_bound, combination: cfg.combination, jobs: cfg.jobs, ..SweepOptions::default() };
    let mut report = match sweep_with(ci.clone(), &cfg.gen, &opts) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(EXIT_PRECONDITION, e.to_string()),
    };
    report.timings.frobenius_ms = frob_ms;
    report.timings.coleman_ms = coleman_ms;
    let mut stderr = format!(
        "frobenius {} ms ({}), coleman {} ms, sweep {} ms\n",
        frob_ms,
        if hit { "cached" } else { "computed" },
        coleman_ms,
        report.timings.sweep_ms
    );
    if !cfg.timings {
        report = report.without_timings();
    }
    let mut stdout = if cfg.json { report.to_json() + "\n" } else { report.to_table() };
    if cfg.dump_series {
        let dump = match series_dump(ci, cfg) {
            Ok(d) => d,
            Err(e) => return Outcome::failure(EXIT_PRECONDITION, e),
        };
        if cfg.json {
            stderr.push_str(&dump);
        } else {
            stdout.push_str(&dump);
        }
    }
    if let Some(path) = &cfg.output {
        let body = if cfg.json { report.to_json() + "\n" } else { report.to_table() };
        if let Err(e) = std::fs::write(path, body) {
            return Outcome::failure(EXIT_PRECONDITION, format!("cannot write {}: {e}", path.display()));
        }
    }
    Outcome { code: exit_code(&report), stdout, stderr }
}

/// 0 when every known point is matched and every disk is certified.
pub fn exit_code(report: &SweepReport) -> i32 {
    if report.all_matched && report.inconclusive_disks().is_empty() {
        EXIT_OK
    } else {
        EXIT_INCOMPLETE
    }
}

fn series_dump(ci: Arc<ColemanIntegrals>, cfg: &RunConfig) -> Result<String, String> {
    let kim = ThetaFunction::new(ci.clone(), &cfg.gen, cfg.combination).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for (i, d) in ci.disks.iter().enumerate() {
        out.push_str(&format!("disk {i} ({}, {}): theta = {}\n", d.xbar, d.ybar, kim.theta_series(i)));
    }
    Ok(out)
}

pub fn run(args: &Args) -> Outcome {
    match RunConfig::from_args(args) {
        Ok(cfg) if args.selftest => selftest::run_selftest(&cfg),
        Ok(cfg) => run_sweep(&cfg),
        Err(e) => Outcome::failure(EXIT_PRECONDITION, e),
    }
}
