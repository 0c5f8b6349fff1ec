//! The function θ_y(z) = log_α(y)²·ρ(z) − log_α(z)²·ρ(y) on X(Z_p) and a
//! sweep of its zeros over all residue disks except the one of the origin.
//!
//! Points reducing to the origin are not integral on the model, so the swept
//! disks never meet the log t part of D₂ and every disk series is an honest
//! power series. That is what lets Strassman's bound apply.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coleman::{disk_parameter, ColemanIntegrals};
use crate::curve::{integer_point, point_to_padic, CurvePoint, DiskKind, RationalPoint, WeierstrassCurve};
use crate::error::ChabautyError;
use crate::padic::PadicNumber;
use crate::rigidcoh::FrobeniusData;
use crate::series::{strassman_roots, RootOutcome, TruncatedSeries};

type Series = TruncatedSeries<PadicNumber>;

pub const REPORT_VERSION: u32 = 1;

/// Which combination of Coleman functions plays the role of ρ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Combination {
    /// ρ = D₂ − ½·log_α·log_β.
    #[default]
    Rho,
    /// ρ = D₂ alone (diagnostic).
    D2,
    /// ρ = D₂ + ½·log_α·log_β: a deliberate sign error, for mutation tests.
    SignFlipped,
}

impl Combination {
    pub fn name(self) -> &'static str {
        match self {
            Combination::Rho => "rho",
            Combination::D2 => "d2",
            Combination::SignFlipped => "sign-flipped",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rho" => Some(Combination::Rho),
            "d2" => Some(Combination::D2),
            "sign-flipped" => Some(Combination::SignFlipped),
            _ => None,
        }
    }

    /// Coefficient of log_α·log_β.
    fn product_weight(self) -> i64 {
        match self {
            Combination::Rho => -1,
            Combination::D2 => 0,
            Combination::SignFlipped => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ThetaFunction {
    ci: Arc<ColemanIntegrals>,
    pub combination: Combination,
    pub y: RationalPoint,
    pub log_alpha_y: PadicNumber,
    pub log_beta_y: PadicNumber,
    pub d2_y: PadicNumber,
    pub rho_y: PadicNumber,
    /// Res(vα) with dv = β.
    pub res_pairing: PadicNumber,
    /// T(ψ(y)); zero for integral y.
    pub psi_y: PadicNumber,
}

fn valuation_or_precision(a: &PadicNumber) -> i32 {
    if a.is_zero() {
        a.precision()
    } else {
        a.valuation()
    }
}

impl ThetaFunction {
    pub fn new(ci: Arc<ColemanIntegrals>, y: &RationalPoint, combination: Combination) -> Result<Self, ChabautyError> {
        let (Some(x), Some(yy)) = (y.x(), y.y()) else {
            return Err(ChabautyError::NonIntegralBasePoint);
        };
        if !x.is_integer() || !yy.is_integer() || !ci.curve.is_on_curve(y) {
            return Err(ChabautyError::NonIntegralBasePoint);
        }
        let z = point_to_padic(y, ci.p, ci.prec);
        let la = ci.log_alpha().evaluate(&z)?;
        if la.is_zero() {
            return Err(ChabautyError::TorsionBasePoint);
        }
        let lb = ci.log_beta().evaluate(&z)?;
        let d2 = ci.d2().evaluate(&z)?;
        let rho = combine(combination, &d2, &la, &lb);
        let res = ci.curve.residue_pairing(8)?;
        let res = PadicNumber::from_rational(ci.p, &res, ci.prec);
        Ok(ThetaFunction {
            psi_y: PadicNumber::zero(ci.p, ci.prec),
            ci,
            combination,
            y: y.clone(),
            log_alpha_y: la,
            log_beta_y: lb,
            d2_y: d2,
            rho_y: rho,
            res_pairing: res,
        })
    }

    pub fn integrals(&self) -> &ColemanIntegrals {
        &self.ci
    }

    pub fn rho(&self, z: &CurvePoint<PadicNumber>) -> Result<PadicNumber, ChabautyError> {
        let d2 = self.ci.d2().evaluate(z)?;
        let la = self.ci.log_alpha().evaluate(z)?;
        let lb = self.ci.log_beta().evaluate(z)?;
        Ok(combine(self.combination, &d2, &la, &lb))
    }

    /// ρ on disk `i` in its disk parameter.
    pub fn rho_series(&self, i: usize) -> Series {
        let d2 = &self.ci.d2().disks[i].series;
        let w = self.combination.product_weight();
        if w == 0 {
            return d2.clone();
        }
        let la = &self.ci.log_alpha().disks[i].series;
        let lb = &self.ci.log_beta().disks[i].series;
        let half = PadicNumber::one(self.ci.p, self.ci.prec).div_int(2);
        let prod = la.mul(lb).truncate(d2.order()).scale(&half);
        if w < 0 {
            d2.sub(&prod)
        } else {
            d2.add(&prod)
        }
    }

    pub fn theta(&self, z: &CurvePoint<PadicNumber>) -> Result<PadicNumber, ChabautyError> {
        let la = self.ci.log_alpha().evaluate(z)?;
        let rho = self.rho(z)?;
        Ok(&(&(&self.log_alpha_y * &self.log_alpha_y) * &rho) - &(&(&la * &la) * &self.rho_y))
    }

    pub fn theta_series(&self, i: usize) -> Series {
        let la = &self.ci.log_alpha().disks[i].series;
        let rho = self.rho_series(i);
        let lay2 = &self.log_alpha_y * &self.log_alpha_y;
        rho.scale(&lay2).sub(&la.mul(la).truncate(rho.order()).scale(&self.rho_y))
    }

    /// λ(z) = log_α(z)/log_α(y).
    pub fn lambda(&self, z: &CurvePoint<PadicNumber>) -> Result<PadicNumber, ChabautyError> {
        let la = self.ci.log_alpha().evaluate(z)?;
        Ok(la.checked_div(&self.log_alpha_y)?)
    }

    /// ψ(z) = λ²·T(ψ(y)) + 2(λ²ρ(y) − ρ(z))·Res(vα)⁻¹.
    pub fn psi_eval(&self, z: &CurvePoint<PadicNumber>) -> Result<PadicNumber, ChabautyError> {
        let l = self.lambda(z)?;
        let l2 = &l * &l;
        let inner = &(&l2 * &self.rho_y) - &self.rho(z)?;
        let scaled = inner.mul_int(2).checked_div(&self.res_pairing)?;
        Ok(&(&l2 * &self.psi_y) + &scaled)
    }

    /// ρ(z) − ρ(y)/log_α(y)²·log_α(z)²; vanishes on integral points when
    /// θ_y does, and should not depend on y.
    pub fn normalized(&self, z: &CurvePoint<PadicNumber>) -> Result<PadicNumber, ChabautyError> {
        let la = self.ci.log_alpha().evaluate(z)?;
        let k = self.rho_y.checked_div(&(&self.log_alpha_y * &self.log_alpha_y))?;
        Ok(&self.rho(z)? - &(&k * &(&la * &la)))
    }
}

fn combine(c: Combination, d2: &PadicNumber, la: &PadicNumber, lb: &PadicNumber) -> PadicNumber {
    match c.product_weight() {
        0 => d2.clone(),
        w => {
            let half = (la * lb).div_int(2);
            if w < 0 {
                d2 - &half
            } else {
                d2 + &half
            }
        }
    }
}

/// Smallest valuation of the difference of the normalized functions for
/// two base points over the sample.
pub fn independence_check(
    k1: &ThetaFunction,
    k2: &ThetaFunction,
    sample: &[CurvePoint<PadicNumber>],
) -> Result<i32, ChabautyError> {
    let mut worst = i32::MAX;
    for z in sample {
        let d = &k1.normalized(z)? - &k2.normalized(z)?;
        worst = worst.min(valuation_or_precision(&d));
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskReport {
    pub index: usize,
    pub xbar: u64,
    pub ybar: u64,
    pub kind: DiskKind,
    /// Valuations of the leading coefficients of θ_y(p·u).
    pub valuation_profile: Vec<Option<i32>>,
    pub strassman_bound: Option<usize>,
    pub root_count: usize,
    pub inconclusive: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub disk: usize,
    /// The disk parameter of the root.
    pub parameter: PadicNumber,
    pub multiplicity: usize,
    pub multiple: bool,
    /// v_p(θ_y) at the root.
    pub theta_valuation: i32,
    /// Known point the root matches, if any.
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub x: String,
    pub y: String,
    pub disk: usize,
    /// Index into `roots`.
    pub root: Option<usize>,
    /// Digits of agreement with the nearest root of its disk.
    pub agreement: i32,
    pub matched: bool,
    /// v_p(θ_y) at the point itself.
    pub theta_valuation: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub frobenius_ms: u64,
    pub coleman_ms: u64,
    pub sweep_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionSummary {
    pub target: i32,
    pub working: i32,
    pub declared_loss: i32,
    /// Certified digits of log_α, log_β, D₂, ∫βα values.
    pub function_precision: [i32; 4],
    /// Digits required for a root to match a known point.
    pub match_digits: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub version: u32,
    pub curve: String,
    pub p: u32,
    #[serde(rename = "N")]
    pub n: i32,
    pub y: [String; 2],
    pub combination: Combination,
    pub search_bound: u64,
    pub disks: Vec<DiskReport>,
    pub roots: Vec<RootReport>,
    pub matches: Vec<MatchReport>,
    pub all_matched: bool,
    pub timings: Timings,
    pub precision: PrecisionSummary,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub search_bound: u64,
    /// Multiples m·y with |m| ≤ this bound are used to label roots.
    pub multiple_bound: i64,
    pub combination: Combination,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { search_bound: 10_000, multiple_bound: 12, combination: Combination::Rho, jobs: None }
    }
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The report with timings cleared, for run-to-run comparison.
    pub fn without_timings(&self) -> Self {
        SweepReport { timings: Timings::default(), ..self.clone() }
    }

    pub fn inconclusive_disks(&self) -> Vec<usize> {
        self.disks.iter().filter(|d| d.inconclusive.is_some()).map(|d| d.index).collect()
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "curve {}  p = {}  N = {}  y = ({}, {})  combination {}\n",
            self.curve,
            self.p,
            self.n,
            self.y[0],
            self.y[1],
            self.combination.name()
        ));
        s.push_str("disk  point    kind  bound  roots  profile\n");
        for d in &self.disks {
            let kind = match d.kind {
                DiskKind::Good => "good",
                DiskKind::Weierstrass => "weier",
            };
            let prof: Vec<String> =
                d.valuation_profile.iter().take(8).map(|v| v.map_or("*".into(), |v| v.to_string())).collect();
            let bound = d.strassman_bound.map_or("-".into(), |b| b.to_string());
            s.push_str(&format!(
                "{:>4}  ({},{}){:>width$}{:<5} {:>5}  {:>5}  {}{}\n",
                d.index,
                d.xbar,
                d.ybar,
                "",
                kind,
                bound,
                d.root_count,
                prof.join(" "),
                d.inconclusive.as_ref().map_or(String::new(), |r| format!("  INCONCLUSIVE: {r}")),
                width = 8usize.saturating_sub(format!("({},{})", d.xbar, d.ybar).len()),
            ));
        }
        s.push_str(&format!("\nintegral points with |x| <= {}:\n", self.search_bound));
        for m in &self.matches {
            s.push_str(&format!(
                "  ({}, {})  disk {}  v(theta) = {}  {}\n",
                m.x,
                m.y,
                m.disk,
                m.theta_valuation,
                if m.matched { format!("matched ({} digits)", m.agreement) } else { "UNMATCHED".into() }
            ));
        }
        s.push_str(&format!("roots: {}  all matched: {}\n", self.roots.len(), self.all_matched));
        for (k, r) in self.roots.iter().enumerate() {
            s.push_str(&format!(
                "  #{k} disk {} s = {}  v(theta) = {}{}\n",
                r.disk,
                r.parameter,
                r.theta_valuation,
                r.label.as_ref().map_or(String::new(), |l| format!("  = {l}"))
            ));
        }
        s
    }
}

fn show(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn agreement(a: &PadicNumber, b: &PadicNumber) -> i32 {
    valuation_or_precision(&(a - b))
}

struct DiskOutcome {
    report: DiskReport,
    roots: Vec<(PadicNumber, usize, bool, i32)>,
}

fn sweep_disk(kim: &ThetaFunction, i: usize) -> DiskOutcome {
    let ci = kim.integrals();
    let d = &ci.disks[i];
    let p = ci.p;
    let theta = kim.theta_series(i);
    // s = p·u with u ∈ Z_p.
    let scaled = theta.rescale(&PadicNumber::from_i64(p, p as i64, ci.prec + theta.order()));
    let profile: Vec<Option<i32>> =
        (0..scaled.end().min(12)).map(|k| scaled.coeff_ref(k).filter(|c| !c.is_zero()).map(|c| c.valuation())).collect();
    let mut report = DiskReport {
        index: d.index,
        xbar: d.xbar,
        ybar: d.ybar,
        kind: d.kind,
        valuation_profile: profile,
        strassman_bound: None,
        root_count: 0,
        inconclusive: None,
    };
    let mut roots = Vec::new();
    match strassman_roots(&scaled) {
        RootOutcome::Inconclusive { reason } => report.inconclusive = Some(reason),
        RootOutcome::Roots(cert) => {
            report.strassman_bound = Some(cert.strassman_bound);
            report.root_count = cert.roots.len();
            for r in cert.roots {
                let s = r.value.shift(1);
                let v = valuation_or_precision(&theta_at(kim, i, &s));
                roots.push((s, r.multiplicity, r.multiple, v));
            }
        }
    }
    DiskOutcome { report, roots }
}

fn theta_at(kim: &ThetaFunction, i: usize, s: &PadicNumber) -> PadicNumber {
    let ci = kim.integrals();
    let la = ci.log_alpha().evaluate_in_disk(i, s);
    let lb = ci.log_beta().evaluate_in_disk(i, s);
    let d2 = ci.d2().evaluate_in_disk(i, s);
    let rho = combine(kim.combination, &d2, &la, &lb);
    &(&(&kim.log_alpha_y * &kim.log_alpha_y) * &rho) - &(&(&la * &la) * &kim.rho_y)
}

/// Sweep all disks except the one of the origin.
pub fn sweep_with(
    ci: Arc<ColemanIntegrals>,
    y: &RationalPoint,
    opts: &SweepOptions,
) -> Result<SweepReport, ChabautyError> {
    let start = Instant::now();
    let kim = ThetaFunction::new(ci.clone(), y, opts.combination)?;
    let curve = &ci.curve;
    let p = ci.p;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()
        .map_err(|e| ChabautyError::InsufficientPrecision(format!("thread pool: {e}")))?;
    let outcomes: Vec<DiskOutcome> =
        pool.install(|| (0..ci.disks.len()).into_par_iter().map(|i| sweep_disk(&kim, i)).collect());

    let match_digits = (ci.n + 1) / 2;
    let mut disks = Vec::new();
    let mut roots: Vec<RootReport> = Vec::new();
    let mut first_root = Vec::new();
    for o in outcomes {
        first_root.push(roots.len());
        for (s, mult, multiple, v) in &o.roots {
            roots.push(RootReport {
                disk: o.report.index,
                parameter: s.clone(),
                multiplicity: *mult,
                multiple: *multiple,
                theta_valuation: *v,
                label: None,
            });
        }
        disks.push(o.report);
    }
    first_root.push(roots.len());

    let locate = |pt: &RationalPoint| -> Option<(usize, PadicNumber)> {
        let z = point_to_padic(pt, p, ci.prec);
        disk_parameter(curve, &ci.disks, &z).ok()
    };
    let nearest = |i: usize, s: &PadicNumber, roots: &[RootReport]| -> Option<(usize, i32)> {
        (first_root[i]..first_root[i + 1]).map(|k| (k, agreement(&roots[k].parameter, s))).max_by_key(|&(_, a)| a)
    };

    let mut matches = Vec::new();
    for (x, yv) in curve.integral_points(opts.search_bound) {
        let pt = integer_point(&x, &yv);
        let Some((i, s)) = locate(&pt) else { continue };
        let tv = valuation_or_precision(&theta_at(&kim, i, &s));
        let near = nearest(i, &s, &roots);
        let (root, agree) = near.map_or((None, 0), |(k, a)| (Some(k), a));
        let matched = agree >= match_digits;
        if matched {
            roots[root.unwrap()].label = Some(format!("({x}, {yv})"));
        }
        matches.push(MatchReport {
            x: x.to_string(),
            y: yv.to_string(),
            disk: i,
            root: if matched { root } else { None },
            agreement: agree,
            matched,
            theta_valuation: tv,
        });
    }
    for m in -opts.multiple_bound..=opts.multiple_bound {
        if m == 0 {
            continue;
        }
        let pt = curve.mul(y, m);
        let Some((i, s)) = locate(&pt) else { continue };
        if let Some((k, a)) = nearest(i, &s, &roots) {
            if a >= match_digits && roots[k].label.is_none() {
                roots[k].label = Some(format!("{m}*y"));
            }
        }
    }
    let all_matched = matches.iter().all(|m| m.matched);
    let (Some(yx), Some(yy)) = (y.x(), y.y()) else { unreachable!("checked by ThetaFunction::new") };
    Ok(SweepReport {
        version: REPORT_VERSION,
        curve: curve.label(),
        p,
        n: ci.n,
        y: [show(yx), show(yy)],
        combination: opts.combination,
        search_bound: opts.search_bound,
        disks,
        roots,
        matches,
        all_matched,
        timings: Timings { sweep_ms: start.elapsed().as_millis() as u64, ..Timings::default() },
        precision: PrecisionSummary {
            target: ci.n,
            working: ci.prec,
            declared_loss: ci.declared_loss,
            function_precision: [ci.log_alpha(), ci.log_beta(), ci.d2(), ci.d2_reversed()].map(|f| f.precision),
            match_digits,
        },
    })
}

/// Full pipeline: Frobenius, Coleman integrals, sweep.
pub fn sweep(
    curve: &WeierstrassCurve,
    p: u32,
    n: i32,
    y: &RationalPoint,
    search_bound: u64,
) -> Result<SweepReport, ChabautyError> {
    let t0 = Instant::now();
    let frob = FrobeniusData::compute(curve, p, n).map_err(crate::error::ColemanError::from)?;
    let t1 = Instant::now();
    let ci = Arc::new(ColemanIntegrals::new(curve, &frob)?);
    let t2 = Instant::now();
    let opts = SweepOptions { search_bound, ..SweepOptions::default() };
    let mut report = sweep_with(ci, y, &opts)?;
    report.timings.frobenius_ms = (t1 - t0).as_millis() as u64;
    report.timings.coleman_ms = (t2 - t1).as_millis() as u64;
    Ok(report)
}

/// Integral point (x, y) as a rational point.
pub fn point(x: i64, y: i64) -> RationalPoint {
    integer_point(&BigInt::from(x), &BigInt::from(y))
}
