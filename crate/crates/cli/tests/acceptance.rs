//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use qc_cli::{run_sweep, Args, RunConfig};
use qc_core::chabauty::{independence_check, point, Combination, ThetaFunction, SweepReport};
use qc_core::coleman::ColemanIntegrals;
use qc_core::curve::{integer_point, point_to_padic, CurvePoint, RationalPoint, WeierstrassCurve};
use qc_core::padic::PadicNumber;
use qc_core::rigidcoh::FrobeniusData;
use qc_nilpotent::{run_suite, F101, Q};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const P: u32 = 7;
const N: i32 = 12;
const SEARCH_BOUND: u64 = 10_000;

fn c37a() -> WeierstrassCurve {
    WeierstrassCurve::from_i64s([0, 0, 1, -1, 0]).unwrap()
}

fn v(a: &PadicNumber) -> i32 {
    if a.is_zero() {
        a.precision()
    } else {
        a.valuation()
    }
}

fn padic(pt: &RationalPoint) -> CurvePoint<PadicNumber> {
    point_to_padic(pt, P, 2 * N)
}

fn build(curve: &WeierstrassCurve, p: u32, n: i32) -> ColemanIntegrals {
    let frob = FrobeniusData::compute(curve, p, n).unwrap();
    ColemanIntegrals::new(curve, &frob).unwrap()
}

/// Random multiples m·(0,0), 0 < |m| ≤ 13, outside the disk of the origin
/// (the reduction of (0,0) has order 9 at 7).
fn random_multiples(rng: &mut StdRng, count: usize) -> Vec<i64> {
    let mut out = Vec::new();
    while out.len() < count {
        let m: i64 = rng.gen_range(-13..=13);
        if m % 9 != 0 {
            out.push(m);
        }
    }
    out
}

fn integral_points(curve: &WeierstrassCurve) -> Vec<RationalPoint> {
    curve.integral_points(SEARCH_BOUND).iter().map(|(x, y)| integer_point(x, y)).collect()
}

fn show(pt: &RationalPoint) -> String {
    format!("({}, {})", pt.x().unwrap(), pt.y().unwrap())
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn secs(d: Duration) -> String {
    format!("{:.1} s", d.as_secs_f64())
}

fn exact_algebra() -> Outcome {
    let start = Instant::now();
    let q = run_suite::<Q>(500, 11);
    let f = run_suite::<F101>(500, 12);
    let t = start.elapsed();
    let mut bad: Vec<String> = q.failures.iter().chain(&f.failures).take(5).cloned().collect();
    if t >= Duration::from_secs(10) {
        bad.push(format!("took {}", secs(t)));
    }
    let n = q.instances + f.instances;
    outcome(q.all_passed() && f.all_passed() && t < Duration::from_secs(10), format!("{n} instances in {}; {}", secs(t), failures(&bad)))
}

fn failures(bad: &[String]) -> String {
    if bad.is_empty() {
        "no failures".into()
    } else {
        bad.join(", ")
    }
}

fn frobenius() -> Outcome {
    let e = c37a();
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for p in [5u32, 7, 11] {
        let start = Instant::now();
        let d = FrobeniusData::compute(&e, p, N).unwrap();
        let t = start.elapsed();
        let a_p = e.count_points(p).unwrap().a_p;
        let tv = v(&(&d.trace() - &PadicNumber::from_i64(p, a_p, 2 * N)));
        let dv = d.det().valuation();
        parts.push(format!("p = {p}: a_p = {a_p}, v(trace - a_p) = {tv}, v(det) = {dv}, {}", secs(t)));
        if tv < N - 2 || dv != 1 || t >= Duration::from_secs(60) {
            bad.push(p.to_string());
        }
    }
    outcome(bad.is_empty(), parts.join("; "))
}

fn single_integrals(ci: &ColemanIntegrals) -> Outcome {
    let start = Instant::now();
    let e = c37a();
    let g = point(0, 0);
    let la = ci.log_alpha();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut hom = i32::MAX;
    let mut pairs = 0;
    while pairs < 20 {
        let (a, b) = (random_multiples(&mut rng, 1)[0], random_multiples(&mut rng, 1)[0]);
        if (a + b) % 9 == 0 {
            continue;
        }
        let [za, zb, zs] = [a, b, a + b].map(|m| padic(&e.mul(&g, m)));
        let d = &(&la.evaluate(&zs).unwrap() - &la.evaluate(&za).unwrap()) - &la.evaluate(&zb).unwrap();
        hom = hom.min(v(&d));
        pairs += 1;
    }
    let mut odd = i32::MAX;
    for m in random_multiples(&mut rng, 20) {
        let pt = e.mul(&g, m);
        let s = &la.evaluate(&padic(&pt)).unwrap() + &la.evaluate(&padic(&e.neg(&pt))).unwrap();
        odd = odd.min(v(&s));
    }
    // 37a has trivial torsion; y² = x(x − 1)(x + 2) has three rational
    // 2-torsion points.
    let t2 = WeierstrassCurve::from_i64s([0, 1, 0, -2, 0]).unwrap();
    let ct = build(&t2, P, N);
    let mut tors = i32::MAX;
    for x in [0, 1, -2] {
        let pt = point(x, 0);
        assert_eq!(t2.torsion_order(&pt), Some(2));
        tors = tors.min(v(&ct.log_alpha().evaluate(&padic(&pt)).unwrap()));
    }
    let t = start.elapsed();
    let need = N - 3;
    outcome(
        hom >= need && odd >= need && tors >= need && t < Duration::from_secs(60),
        format!("min valuations: homomorphism {hom} on {pairs} pairs, oddness {odd}, torsion {tors} (need {need}); {}", secs(t)),
    )
}

fn shuffle(ci: &ColemanIntegrals) -> Outcome {
    let e = c37a();
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst = i32::MAX;
    for m in random_multiples(&mut rng, 20) {
        let z = padic(&e.mul(&point(0, 0), m));
        let lhs = &ci.d2().evaluate(&z).unwrap() + &ci.d2_reversed().evaluate(&z).unwrap();
        let rhs = &ci.log_alpha().evaluate(&z).unwrap() * &ci.log_beta().evaluate(&z).unwrap();
        worst = worst.min(v(&(&lhs - &rhs)));
    }
    outcome(worst >= N - 3, format!("20 points, min valuation {worst} (need {})", N - 3))
}

fn vanishing(ci: &Arc<ColemanIntegrals>) -> Outcome {
    let kim = ThetaFunction::new(ci.clone(), &point(0, 0), Combination::Rho).unwrap();
    let pts = integral_points(&c37a());
    let mut bad = Vec::new();
    let mut worst = i32::MAX;
    for pt in &pts {
        let tv = v(&kim.theta(&padic(pt)).unwrap());
        worst = worst.min(tv);
        if tv < N - 4 {
            bad.push(format!("{} at {tv}", show(pt)));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} integral points with |x| <= {SEARCH_BOUND}, min valuation {worst} (need {}); below: {}", pts.len(), N - 4, failures(&bad)),
    )
}

fn independence(ci: &Arc<ColemanIntegrals>) -> Outcome {
    let e = c37a();
    let k1 = ThetaFunction::new(ci.clone(), &point(0, 0), Combination::Rho).unwrap();
    let k2 = ThetaFunction::new(ci.clone(), &point(2, 2), Combination::Rho).unwrap();
    let mut rng = StdRng::seed_from_u64(6);
    let sample: Vec<_> = random_multiples(&mut rng, 20).into_iter().map(|m| padic(&e.mul(&point(0, 0), m))).collect();
    let worst = independence_check(&k1, &k2, &sample).unwrap();
    outcome(worst >= N - 4, format!("y1 = (0, 0), y2 = (2, 2), 20 points, min valuation {worst} (need {})", N - 4))
}

fn root_recovery(report: &SweepReport, elapsed: Duration) -> Outcome {
    let unmatched: Vec<String> =
        report.matches.iter().filter(|m| !m.matched).map(|m| format!("({}, {}) {} digits", m.x, m.y, m.agreement)).collect();
    let weak_roots = report.roots.iter().filter(|r| r.theta_valuation < N - 4).count();
    let uncertified: Vec<usize> =
        report.disks.iter().filter(|d| d.strassman_bound.is_none() || d.inconclusive.is_some()).map(|d| d.index).collect();
    let passed = unmatched.is_empty() && weak_roots == 0 && uncertified.is_empty() && elapsed < Duration::from_secs(300);
    outcome(
        passed,
        format!(
            "{}/{} points matched at {} digits, {} roots with v(theta) < {}, {} uncertified disks, sweep {}; unmatched: {}",
            report.matches.len() - unmatched.len(),
            report.matches.len(),
            report.precision.match_digits,
            weak_roots,
            N - 4,
            uncertified.len(),
            secs(elapsed),
            failures(&unmatched)
        ),
    )
}

fn consistency(ci: &Arc<ColemanIntegrals>) -> Outcome {
    let e = c37a();
    let pts = integral_points(&e);
    let mut chained = (**ci).clone();
    let mut routes = i32::MAX;
    for pt in &pts {
        let z = padic(pt);
        let a = ci.d2().evaluate(&z).unwrap();
        let b = chained.d2_by_multiplication(&z).unwrap();
        routes = routes.min(v(&(&a - &b)));
    }
    let lo = Arc::new(build(&e, P, 8));
    let (k_lo, k_hi) = (
        ThetaFunction::new(lo.clone(), &point(0, 0), Combination::Rho).unwrap(),
        ThetaFunction::new(ci.clone(), &point(0, 0), Combination::Rho).unwrap(),
    );
    let mut trunc = i32::MAX;
    let mut short = 0;
    for pt in &pts {
        let z = padic(pt);
        let mut pairs: Vec<(PadicNumber, PadicNumber)> = [
            (lo.log_alpha(), ci.log_alpha()),
            (lo.log_beta(), ci.log_beta()),
            (lo.d2(), ci.d2()),
            (lo.d2_reversed(), ci.d2_reversed()),
        ]
        .into_iter()
        .map(|(a, b)| (a.evaluate(&z).unwrap(), b.evaluate(&z).unwrap()))
        .collect();
        pairs.push((k_lo.theta(&z).unwrap(), k_hi.theta(&z).unwrap()));
        for (a, b) in pairs {
            if a.precision() < 8 {
                short += 1;
            }
            trunc = trunc.min(v(&(&a - &b)));
        }
    }
    outcome(
        routes >= N - 3 && trunc >= 8 && short == 0,
        format!(
            "D2 two routes min valuation {routes} (need {}); N = 8 vs N = 12 min agreement {trunc} (need 8), {short} values below 8 digits",
            N - 3
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let argv = ["qc", "--json", "--cache-dir", dir.path().to_str().unwrap()];
    let args = <Args as clap::Parser>::try_parse_from(argv).unwrap();
    let cfg = RunConfig::from_args(&args).unwrap();
    let cold = run_sweep(&cfg);
    let warm = run_sweep(&cfg);
    let cached = warm.stderr.contains("cached") && cold.stderr.contains("computed");
    let identical = cold.stdout == warm.stdout && cold.code == warm.code;
    let report = SweepReport::from_json(&cold.stdout).unwrap();
    let lossless = report.to_json() + "\n" == cold.stdout && SweepReport::from_json(&report.to_json()).unwrap() == report;
    outcome(
        cached && identical && lossless,
        format!("second run from cache: {cached}; bit-identical: {identical}; JSON round-trip lossless: {lossless}"),
    )
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut record = |i: usize, name: &'static str, o: Outcome| {
        println!("{} {i} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        results.push((i, name, o));
    };
    record(1, "exact algebra", exact_algebra());
    record(2, "Frobenius", frobenius());

    let sweep_start = Instant::now();
    let args = <Args as clap::Parser>::try_parse_from(["qc", "--json"]).unwrap();
    let cfg = RunConfig::from_args(&args).unwrap();
    let swept = run_sweep(&cfg);
    let sweep_time = sweep_start.elapsed();
    let (ci, _, _, _) = cfg.integrals().unwrap();
    let report = SweepReport::from_json(&swept.stdout).unwrap();

    record(3, "single integrals", single_integrals(&ci));
    record(4, "shuffle", shuffle(&ci));
    record(5, "vanishing at integral points", vanishing(&ci));
    record(6, "base-point independence", independence(&ci));
    record(7, "root recovery", root_recovery(&report, sweep_time));
    record(8, "path and precision consistency", consistency(&ci));
    record(9, "determinism and cache", determinism());

    let failed: Vec<usize> = results.iter().filter(|r| !r.2.passed).map(|r| r.0).collect();
    println!("{} of 9 criteria passed in {}", 9 - failed.len(), secs(start.elapsed()));
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
