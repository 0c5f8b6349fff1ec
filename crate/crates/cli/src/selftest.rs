//! Self-test suites: exact algebra, Frobenius, single/double integral laws
//! and base-point independence. One PASS/FAIL line per suite.

use std::sync::Arc;
use std::time::Instant;

use qc_core::chabauty::{independence_check, ThetaFunction};
use qc_core::coleman::ColemanIntegrals;
use qc_core::curve::{integer_point, point_to_padic, CurvePoint, RationalPoint, WeierstrassCurve};
use qc_core::padic::PadicNumber;
use qc_core::rigidcoh::FrobeniusData;
use qc_nilpotent::{run_suite, F101, Q};

use crate::{Outcome, RunConfig, EXIT_INCOMPLETE, EXIT_OK, EXIT_PRECONDITION};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// v_p(a), or its precision when a is zero to that precision.
pub fn agreement(a: &PadicNumber) -> i32 {
    if a.is_zero() {
        a.precision()
    } else {
        a.valuation()
    }
}

fn outside_origin_disk(curve: &WeierstrassCurve, pt: &RationalPoint, p: u32) -> bool {
    matches!(curve.reduce_point(pt, p), Ok(Some(_)))
}

/// Nonzero multiples m·y, by increasing |m| (positive first), that avoid the
/// disk of the origin.
pub fn multiples(curve: &WeierstrassCurve, y: &RationalPoint, p: u32, count: usize) -> Vec<(i64, RationalPoint)> {
    let mut out = Vec::new();
    let mut m = 1i64;
    while out.len() < count && m < 200 {
        for k in [m, -m] {
            let pt = curve.mul(y, k);
            if out.len() < count && outside_origin_disk(curve, &pt, p) {
                out.push((k, pt));
            }
        }
        m += 1;
    }
    out
}

/// Sample points for comparisons: multiples of y as points over Q_p.
pub fn sample_points(ci: &ColemanIntegrals, y: &RationalPoint, count: usize) -> Vec<CurvePoint<PadicNumber>> {
    multiples(&ci.curve, y, ci.p, count).into_iter().map(|(_, pt)| point_to_padic(&pt, ci.p, ci.prec)).collect()
}

pub fn nilpotent_suite(instances_per_field: usize) -> SuiteResult {
    let start = Instant::now();
    let q = run_suite::<Q>(instances_per_field, 1);
    let f = run_suite::<F101>(instances_per_field, 2);
    let mut detail = format!("{} instances over {} and {} in {:.1} s", q.instances + f.instances, q.field, f.field, start.elapsed().as_secs_f64());
    for r in [&q, &f] {
        for t in &r.tallies {
            if t.passed != t.total {
                detail.push_str(&format!("; {} {}: {}/{}", r.field, t.name, t.passed, t.total));
            }
        }
    }
    SuiteResult { name: "nilpotent identities", passed: q.all_passed() && f.all_passed(), detail }
}

/// trace(M) ≡ a_p mod p^(N−2) and v_p(det M) = 1.
pub fn frobenius_suite(curve: &WeierstrassCurve, frob: &FrobeniusData) -> SuiteResult {
    let p = frob.p;
    let n = frob.n;
    let name = "Frobenius characteristic polynomial";
    let a_p = match curve.count_points(p) {
        Ok(c) => c.a_p,
        Err(e) => return SuiteResult { name, passed: false, detail: e.to_string() },
    };
    let t = &frob.trace() - &PadicNumber::from_i64(p, a_p, frob.precision());
    let tv = agreement(&t);
    let dv = frob.det().valuation();
    SuiteResult {
        name,
        passed: tv >= n - 2 && dv == 1,
        detail: format!("p = {p}, a_p = {a_p}, v(trace - a_p) = {tv} (need {}), v(det) = {dv}", n - 2),
    }
}

/// log_α additive on 20 pairs, odd, and D₂ + ∫βα = log_α·log_β on 20 points.
pub fn integral_suite(ci: &ColemanIntegrals, y: &RationalPoint) -> SuiteResult {
    let name = "homomorphism and shuffle";
    let curve = &ci.curve;
    let (p, n) = (ci.p, ci.n);
    let pad = |pt: &RationalPoint| point_to_padic(pt, p, ci.prec);
    let mut worst_hom = i32::MAX;
    let mut worst_odd = i32::MAX;
    let mut worst_shuffle = i32::MAX;
    let mut pairs = 0;
    let ms: Vec<i64> = multiples(curve, y, p, 12).into_iter().map(|(m, _)| m).collect();
    let mut run = || -> Result<(), qc_core::error::ColemanError> {
        let la = ci.log_alpha();
        for &a in &ms {
            for &b in &ms {
                if pairs >= 20 || a > b {
                    continue;
                }
                let (pa, pb) = (curve.mul(y, a), curve.mul(y, b));
                let sum = curve.add(&pa, &pb);
                if !outside_origin_disk(curve, &sum, p) {
                    continue;
                }
                let d = &(&la.evaluate(&pad(&sum))? - &la.evaluate(&pad(&pa))?) - &la.evaluate(&pad(&pb))?;
                worst_hom = worst_hom.min(agreement(&d));
                pairs += 1;
            }
        }
        for (_, pt) in multiples(curve, y, p, 20) {
            let z = pad(&pt);
            let odd = &la.evaluate(&z)? + &la.evaluate(&pad(&curve.neg(&pt)))?;
            worst_odd = worst_odd.min(agreement(&odd));
            let lhs = &ci.d2().evaluate(&z)? + &ci.d2_reversed().evaluate(&z)?;
            let rhs = &la.evaluate(&z)? * &ci.log_beta().evaluate(&z)?;
            worst_shuffle = worst_shuffle.min(agreement(&(&lhs - &rhs)));
        }
        Ok(())
    };
    if let Err(e) = run() {
        return SuiteResult { name, passed: false, detail: e.to_string() };
    }
    let need = n - 3;
    SuiteResult {
        name,
        passed: pairs == 20 && worst_hom >= need && worst_odd >= need && worst_shuffle >= need,
        detail: format!("{pairs} pairs; min valuations: additivity {worst_hom}, oddness {worst_odd}, shuffle {worst_shuffle} (need {need})"),
    }
}

/// The normalized function for y against every other integral non-torsion
/// point as base point, on 20 sample points.
pub fn independence_suite(ci: &Arc<ColemanIntegrals>, cfg: &RunConfig) -> SuiteResult {
    let name = "base-point independence";
    let need = ci.n - 4;
    let k1 = match ThetaFunction::new(ci.clone(), &cfg.gen, cfg.combination) {
        Ok(k) => k,
        Err(e) => return SuiteResult { name, passed: false, detail: e.to_string() },
    };
    let sample = sample_points(ci, &cfg.gen, 20);
    let (neg, curve) = (cfg.curve.neg(&cfg.gen), &cfg.curve);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut worst = i32::MAX;
    for (x, yy) in curve.integral_points(cfg.search_bound.min(1000)) {
        let y2 = integer_point(&x, &yy);
        if y2 == cfg.gen || y2 == neg || curve.torsion_order(&y2).is_some() {
            continue;
        }
        let v = ThetaFunction::new(ci.clone(), &y2, cfg.combination).and_then(|k2| independence_check(&k1, &k2, &sample));
        checked += 1;
        match v {
            Ok(v) => {
                worst = worst.min(v);
                if v < need {
                    failures.push(format!("({x}, {yy}): {v}"));
                }
            }
            Err(e) => failures.push(format!("({x}, {yy}): {e}")),
        }
    }
    let mut detail = format!(
        "combination {}, {checked} base points, {} sample points, min valuation {} (need {need})",
        cfg.combination.name(),
        sample.len(),
        if worst == i32::MAX { "-".to_string() } else { worst.to_string() }
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; below threshold: {}", failures.join(", ")));
    }
    SuiteResult { name, passed: checked > 0 && failures.is_empty(), detail }
}

pub fn run_selftest(cfg: &RunConfig) -> Outcome {
    let mut results = vec![nilpotent_suite(500)];
    let frob = match FrobeniusData::load_or_compute(&cfg.curve, cfg.p, cfg.n, cfg.cache_dir.as_deref()) {
        Ok((f, _)) => f,
        Err(e) => return Outcome { code: EXIT_PRECONDITION, stdout: String::new(), stderr: format!("{e}\n") },
    };
    results.push(frobenius_suite(&cfg.curve, &frob));
    match ColemanIntegrals::new(&cfg.curve, &frob) {
        Ok(ci) => {
            let ci = Arc::new(ci);
            results.push(integral_suite(&ci, &cfg.gen));
            results.push(independence_suite(&ci, cfg));
        }
        Err(e) => {
            return Outcome { code: EXIT_PRECONDITION, stdout: String::new(), stderr: format!("{e}\n") };
        }
    }
    let stdout: String = results.iter().map(|r| r.line() + "\n").collect();
    let code = if results.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_INCOMPLETE };
    Outcome { code, stdout, stderr: String::new() }
}
