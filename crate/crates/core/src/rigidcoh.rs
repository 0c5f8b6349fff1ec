//! Frobenius on H¹_dR of the short model minus the origin.
//!
//! With φ(x) = x^p and φ(Y) = Y^p (1 + E/f^p)^{1/2}, E = f(x^p) − f(x)^p,
//! the pullbacks of ω₀ = dx/Y and ω₁ = x dx/Y are reduced to the basis by
//! descending the pole order in Y and then the degree in x. The result is
//! φ*ω_i = Σ_j M_ji ω_j + dg_i.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::curve::{DiskKind, ResidueDisk, WeierstrassCurve};
use crate::error::FrobeniusError;
use crate::field::FieldElement;
use crate::padic::{ilog, val_i64, PadicNumber};
use crate::poly::Poly;
use crate::series::TruncatedSeries;

pub const CACHE_VERSION: u32 = 1;

type Series = TruncatedSeries<PadicNumber>;

/// g = Y·Σ_a c_a x^a + Σ_j V_j(x) Y^{−(2j−1)}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverconvergentFunction {
    /// c_a, the coefficient of x^a·Y.
    pub y_poly: Vec<PadicNumber>,
    /// V_j for j = 1, 2, ... (each of degree ≤ 2).
    pub inv: Vec<Vec<PadicNumber>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionLedger {
    /// Internal working precision (twice the target).
    pub working: i32,
    /// Fixed modulus used while reducing.
    pub reduction: i32,
    /// Digits declared lost by the reduction denominators.
    pub declared_loss: i32,
    /// Largest p-adic valuation of a single divisor seen while reducing.
    pub observed_step_loss: i32,
    /// Terms kept in the expansion of (1 + E/f^p)^{-1/2}.
    pub series_terms: usize,
    /// Highest Y-pole level (pole order 2J + 1).
    pub top_level: usize,
    pub supersingular: bool,
    pub a_p: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrobeniusData {
    pub version: u32,
    /// a-invariants as `a1,a2,a3,a4,a6`.
    pub curve: String,
    pub p: u32,
    /// Target precision N.
    pub n: i32,
    /// matrix[j][i] = M_ji.
    pub matrix: [[PadicNumber; 2]; 2],
    pub primitives: [OverconvergentFunction; 2],
    pub ledger: PrecisionLedger,
}

fn fix(p: &Poly<PadicNumber>, r: i32) -> Poly<PadicNumber> {
    Poly::new(p.proto(), p.coeffs().iter().map(|c| c.lift_to(r)).collect())
}

fn rat_to_padic(q: &BigRational, p: u32, prec: i32) -> PadicNumber {
    if q.is_zero() {
        PadicNumber::exact_zero(p)
    } else {
        PadicNumber::from_rational(p, q, prec)
    }
}

/// binom(−1/2, k) as an exact rational.
fn binom_minus_half(k: usize) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for m in 0..k {
        let num = BigRational::new(BigInt::from(-1 - 2 * m as i64), BigInt::from(2));
        acc = acc * num / BigRational::from_integer(BigInt::from(m as i64 + 1));
    }
    acc
}

impl OverconvergentFunction {
    fn new() -> Self {
        OverconvergentFunction { y_poly: Vec::new(), inv: Vec::new() }
    }

    /// V_j as a polynomial.
    pub fn v(&self, j: usize, proto: &PadicNumber) -> Poly<PadicNumber> {
        Poly::new(proto, self.inv.get(j - 1).cloned().unwrap_or_default())
    }

    pub fn levels(&self) -> usize {
        self.inv.len()
    }

    /// Value at (x, Y) with Y ≠ 0.
    pub fn eval(&self, x: &PadicNumber, y: &PadicNumber) -> PadicNumber {
        let proto = PadicNumber::one(x.prime(), x.precision().min(y.precision()).max(1));
        let poly = Poly::new(&proto, self.y_poly.clone());
        let acc = &poly.eval(x) * y;
        if self.inv.is_empty() {
            return acc;
        }
        let yinv = y.inverse().expect("Y is a unit away from Weierstrass disks");
        let y2inv = &yinv * &yinv;
        // Horner in Y^{-2}: Σ_j V_j Y^{-(2j-1)} = Y^{-1}(V_1 + Y^{-2}(V_2 + ...)).
        let mut inner = PadicNumber::exact_zero(x.prime());
        for vj in self.inv.iter().rev() {
            inner = &(&inner * &y2inv) + &Poly::new(&proto, vj.clone()).eval(x);
        }
        &acc + &(&inner * &yinv)
    }

    /// Expansion along series coordinates (x(s), Y(s)) with Y invertible.
    pub fn series(&self, x: &Series, y: &Series) -> Result<Series, FrobeniusError> {
        let proto = x.proto().clone();
        let poly = Poly::new(&proto, self.y_poly.clone());
        let mut acc = poly.eval_series(x).mul(y);
        if self.inv.is_empty() {
            return Ok(acc);
        }
        let yinv = y.inverse()?;
        let y2inv = yinv.mul(&yinv);
        let mut inner = Series::zero(&proto, yinv.order());
        for vj in self.inv.iter().rev() {
            inner = inner.mul(&y2inv).add(&Poly::new(&proto, vj.clone()).eval_series(x));
        }
        acc = acc.add(&inner.mul(&yinv));
        Ok(acc)
    }

    fn cap(&mut self, prec: i32) {
        for c in self.y_poly.iter_mut() {
            *c = c.with_precision(prec);
        }
        for v in self.inv.iter_mut() {
            for c in v.iter_mut() {
                *c = c.with_precision(prec);
            }
        }
    }
}

/// Declared loss for a reduction reaching pole order 2J + 1 (plus the
/// degree reduction at infinity, whose divisors 2a + 3 never exceed p).
fn declared_loss(p: u32, top_level: usize) -> i32 {
    ilog(p, 2 * top_level as u64 + 1) + 1 + 1
}

impl FrobeniusData {
    /// Compute M and g_i for target precision `n`.
    pub fn compute(curve: &WeierstrassCurve, p: u32, n: i32) -> Result<Self, FrobeniusError> {
        curve.check_prime(p)?;
        if n < 1 || n > 200 {
            return Err(FrobeniusError::BudgetExceeded { lost: 0, budget: n });
        }
        let a_p = curve.count_points(p)?.a_p;
        let supersingular = a_p.rem_euclid(p as i64) == 0;
        let working = 2 * n;
        // Fix the number of terms and the loss together.
        let mut k_max = working as usize;
        let mut loss;
        loop {
            let top = (p as usize * (2 * k_max + 1) - 1) / 2;
            loss = declared_loss(p, top);
            let need = (working + loss - 2).max(0) as usize;
            if need <= k_max {
                break;
            }
            k_max = need;
        }
        let top = (p as usize * (2 * k_max + 1) - 1) / 2;
        let effective = if supersingular { 2 * loss } else { loss };
        let budget = working - n;
        if effective > budget {
            return Err(FrobeniusError::BudgetExceeded { lost: effective, budget });
        }
        let r = working + loss;
        let one = PadicNumber::one(p, r);
        let f = curve.short_poly(&one);
        let df = f.derivative();
        let qone = BigRational::from_integer(BigInt::from(1));
        let fq = curve.short_poly(&qone);
        let (uq, vq) = Poly::bezout(&fq, &fq.derivative()).ok_or(FrobeniusError::Curve(crate::error::CurveError::Singular))?;
        let _ = uq;
        let v = vq.map(&one, |c| rat_to_padic(c, p, r));

        // E = f(x^p) − f(x)^p.
        let mut fxp = vec![PadicNumber::exact_zero(p); 3 * p as usize + 1];
        for (k, c) in f.coeffs().iter().enumerate() {
            fxp[k * p as usize] = c.clone();
        }
        let fpow = (0..p).fold(Poly::constant(one.clone()), |acc, _| acc.mul(&f));
        let e = Poly::new(&one, fxp).sub(&fpow);

        let mut levels: [Vec<Poly<PadicNumber>>; 2] =
            [vec![Poly::zero(&one); top + 1], vec![Poly::zero(&one); top + 1]];
        let mut ek = Poly::constant(one.clone());
        for k in 0..=k_max {
            let bk = rat_to_padic(&binom_minus_half(k), p, r).mul_int(p as i64);
            let base = ek.scale(&bk);
            let j = (p as usize * (2 * k + 1) - 1) / 2;
            for (i, lv) in levels.iter_mut().enumerate() {
                let shift = p as usize * (i + 1) - 1;
                let mut coeffs = vec![PadicNumber::exact_zero(p); shift];
                coeffs.extend(base.coeffs().iter().cloned());
                lv[j] = lv[j].add(&Poly::new(&one, coeffs));
            }
            ek = ek.mul(&e);
        }

        let mut observed = 0;
        let mut matrix_cols = Vec::new();
        let mut prims = Vec::new();
        for mut lv in levels {
            let mut g = OverconvergentFunction::new();
            g.inv = vec![Vec::new(); top];
            for j in (1..=top).rev() {
                let c = fix(&std::mem::replace(&mut lv[j], Poly::zero(&one)), r);
                if c.is_zero() {
                    continue;
                }
                let (_, vv) = c.mul(&v).divrem_monic(&f);
                let vv = fix(&vv, r);
                let (uu, _) = c.sub(&vv.mul(&df)).divrem_monic(&f);
                let d = 2 * j as i64 - 1;
                observed = observed.max(val_i64(p, d));
                let dv = vv.derivative().scale(&one.mul_int(2).div_int(d));
                lv[j - 1] = fix(&lv[j - 1].add(&uu).add(&dv), r);
                let gj = fix(&vv.scale(&one.mul_int(-2).div_int(d)), r);
                g.inv[j - 1] = gj.coeffs().to_vec();
            }
            // Degree reduction with d(x^a Y) = (a x^{a-1} f + x^a f'/2) dx/Y.
            let mut c0 = fix(&lv[0], r);
            let deg = c0.len();
            g.y_poly = vec![PadicNumber::exact_zero(p); deg.saturating_sub(2)];
            for top_deg in (2..deg).rev() {
                let a = top_deg - 2;
                let lead = c0.coeff(top_deg);
                if lead.fis_zero() && lead.is_exact_zero() {
                    continue;
                }
                let d = 2 * a as i64 + 3;
                observed = observed.max(val_i64(p, d));
                let kappa = lead.mul_int(2).div_int(d).lift_to(r);
                let xa = Poly::monomial(one.clone(), a);
                let mut rel = xa.mul(&df).scale(&one.div_int(2));
                if a > 0 {
                    rel = rel.add(&Poly::monomial(one.mul_int(a as i64), a - 1).mul(&f));
                }
                c0 = fix(&c0.sub(&rel.scale(&kappa)), r);
                g.y_poly[a] = kappa;
            }
            let cap = r - loss;
            g.cap(cap);
            while g.inv.last().is_some_and(|v| v.iter().all(|c| c.is_zero())) {
                g.inv.pop();
            }
            matrix_cols.push([c0.coeff(0).with_precision(cap), c0.coeff(1).with_precision(cap)]);
            prims.push(g);
        }
        let matrix = [
            [matrix_cols[0][0].clone(), matrix_cols[1][0].clone()],
            [matrix_cols[0][1].clone(), matrix_cols[1][1].clone()],
        ];
        let g1 = prims.pop().unwrap();
        let g0 = prims.pop().unwrap();
        Ok(FrobeniusData {
            version: CACHE_VERSION,
            curve: curve.label(),
            p,
            n,
            matrix,
            primitives: [g0, g1],
            ledger: PrecisionLedger {
                working,
                reduction: r,
                declared_loss: effective,
                observed_step_loss: observed,
                series_terms: k_max + 1,
                top_level: top,
                supersingular,
                a_p,
            },
        })
    }

    /// M_ji.
    pub fn m(&self, j: usize, i: usize) -> &PadicNumber {
        &self.matrix[j][i]
    }

    pub fn trace(&self) -> PadicNumber {
        &self.matrix[0][0] + &self.matrix[1][1]
    }

    pub fn det(&self) -> PadicNumber {
        &(&self.matrix[0][0] * &self.matrix[1][1]) - &(&self.matrix[0][1] * &self.matrix[1][0])
    }

    /// Precision guaranteed for the reported data.
    pub fn precision(&self) -> i32 {
        self.ledger.working
    }

    pub fn curve(&self) -> Result<WeierstrassCurve, FrobeniusError> {
        Ok(WeierstrassCurve::parse(&self.curve)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }

    /// Parse and validate a cached record.
    pub fn from_json(text: &str) -> Result<Self, FrobeniusError> {
        let d: FrobeniusData = serde_json::from_str(text).map_err(|e| FrobeniusError::Cache(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), FrobeniusError> {
        let bad = |m: &str| Err(FrobeniusError::Cache(m.to_string()));
        if self.version != CACHE_VERSION {
            return bad("version mismatch");
        }
        let curve = self.curve()?;
        if curve.check_prime(self.p).is_err() {
            return bad("prime is not a good odd prime for the curve");
        }
        let all = self.matrix.iter().flatten().chain(
            self.primitives.iter().flat_map(|g| g.y_poly.iter().chain(g.inv.iter().flatten())),
        );
        for c in all {
            if c.prime() != self.p {
                return bad("mixed primes");
            }
        }
        if self.primitives.iter().any(|g| g.inv.iter().any(|v| v.len() > 3)) {
            return bad("pole coefficients must have degree at most 2");
        }
        Ok(())
    }

    pub fn cache_path(dir: &Path, curve: &WeierstrassCurve, p: u32, n: i32) -> PathBuf {
        let label: String = curve
            .label()
            .chars()
            .map(|c| match c {
                ',' => '_',
                '-' => 'm',
                c => c,
            })
            .collect();
        dir.join(format!("frob-v{CACHE_VERSION}-{label}-p{p}-n{n}.json"))
    }

    /// Load from the cache directory if a matching record exists, else
    /// compute and store.
    pub fn load_or_compute(
        curve: &WeierstrassCurve,
        p: u32,
        n: i32,
        cache_dir: Option<&Path>,
    ) -> Result<(Self, bool), FrobeniusError> {
        if let Some(dir) = cache_dir {
            let path = Self::cache_path(dir, curve, p, n);
            if let Ok(text) = std::fs::read_to_string(&path) {
                if let Ok(d) = Self::from_json(&text) {
                    if d.curve == curve.label() && d.p == p && d.n == n {
                        return Ok((d, true));
                    }
                }
            }
            let d = Self::compute(curve, p, n)?;
            std::fs::create_dir_all(dir).map_err(|e| FrobeniusError::Cache(e.to_string()))?;
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, d.to_json()).map_err(|e| FrobeniusError::Cache(e.to_string()))?;
            std::fs::rename(&tmp, &path).map_err(|e| FrobeniusError::Cache(e.to_string()))?;
            return Ok((d, false));
        }
        Ok((Self::compute(curve, p, n)?, false))
    }
}

/// Series coordinates on a residue disk.
#[derive(Clone, Debug)]
pub struct DiskChart {
    pub x: Series,
    /// Short-model Y.
    pub y: Series,
    /// Coefficients of ds in ω₀, ω₁.
    pub omega: [Series; 2],
}

/// x, Y and ω_i as series in the disk parameter.
pub fn disk_chart(curve: &WeierstrassCurve, disk: &ResidueDisk, prec: i32, order: i32) -> Result<DiskChart, FrobeniusError> {
    let p = disk.x0.prime();
    let one = PadicNumber::one(p, prec);
    let f = curve.short_poly(&one);
    let s = Series::variable(&one, order).with_var("s");
    match disk.kind {
        DiskKind::Good => {
            let x = s.add_constant(&disk.x0);
            let y0sq = &disk.y0 * &disk.y0;
            let ratio = f.eval_series(&x).scale(&y0sq.inverse()?);
            let y = ratio.truncate(order).sqrt_one_plus()?.scale(&disk.y0);
            let yinv = y.inverse()?;
            let omega = [yinv.clone(), x.mul(&yinv)];
            Ok(DiskChart { x, y, omega })
        }
        DiskKind::Weierstrass => {
            // Solve f(x) = s² by Newton iteration from the root x0.
            let df = f.derivative();
            let s2 = s.mul(&s);
            let mut x = Series::zero(&one, order).add_constant(&disk.x0).with_var("s");
            let mut good = 1;
            while good < order + 2 {
                let num = f.eval_series(&x).sub(&s2);
                let den = df.eval_series(&x);
                x = x.sub(&num.mul(&den.inverse()?)).truncate(order + 1);
                good *= 2;
            }
            let dx = x.derivative();
            // dx/Y = x'(s) ds / s; x' is odd in s.
            let w0 = Series::new(&one, 0, (1..dx.end()).map(|k| dx.coeff(k)).collect(), order).with_var("s");
            let omega = [w0.clone(), x.truncate(order).mul(&w0)];
            Ok(DiskChart { x: x.truncate(order), y: s, omega })
        }
    }
}

/// s ↦ φ(s) on a good disk: (x0 + s)^p − x0.
pub fn frobenius_on_disk_parameter(disk: &ResidueDisk, prec: i32, order: i32) -> Result<Series, FrobeniusError> {
    if disk.kind == DiskKind::Weierstrass {
        return Err(FrobeniusError::WeierstrassDisk);
    }
    let p = disk.x0.prime();
    let one = PadicNumber::one(p, prec);
    let x = Series::variable(&one, order).with_var("s").add_constant(&disk.x0);
    Ok(x.pow(p as i64)?.add_constant(&disk.x0.fneg()))
}

/// The lift φ on the disk of the origin, as a series t ↦ φ(t) with
/// t = −x/y on the given model.
pub fn frobenius_on_origin_parameter(curve: &WeierstrassCurve, p: u32, prec: i32, order: i32) -> Result<Series, FrobeniusError> {
    let one = PadicNumber::one(p, prec);
    let m = (order + 3 * p as i32 + 8).max(12) as usize;
    let ex = curve.local_expansion_at_origin(m)?;
    let ex = ex.map(&one, |q| rat_to_padic(q, p, prec));
    let f = curve.short_poly(&one);
    let half = one.div_int(2);
    let a1 = one.from_bigint_like(&curve.ainvs()[0]);
    let a3 = one.from_bigint_like(&curve.ainvs()[2]);
    let ybig = ex.y.add(&ex.x.scale(&a1).add_constant(&a3).scale(&half));
    let xp = ex.x.pow(p as i64)?;
    let yp = ybig.pow(p as i64)?;
    let ratio = f.eval_series(&xp).mul(&yp.mul(&yp).inverse()?);
    let root = ratio.sqrt_one_plus()?;
    let phi_y = yp.mul(&root);
    let phi_yorig = phi_y.sub(&xp.scale(&a1).add_constant(&a3).scale(&half));
    let t = xp.mul(&phi_yorig.inverse()?).neg();
    Ok(t.truncate(order).with_var("t"))
}

/// φ*ω_i on a good disk computed directly from the lift (no reduction).
pub fn pullback_on_disk(curve: &WeierstrassCurve, disk: &ResidueDisk, prec: i32, order: i32) -> Result<[Series; 2], FrobeniusError> {
    if disk.kind == DiskKind::Weierstrass {
        return Err(FrobeniusError::WeierstrassDisk);
    }
    let p = disk.x0.prime();
    let chart = disk_chart(curve, disk, prec, order)?;
    let one = PadicNumber::one(p, prec);
    let f = curve.short_poly(&one);
    let phx = chart.x.pow(p as i64)?;
    let yp = chart.y.pow(p as i64)?;
    let ratio = f.eval_series(&phx).mul(&yp.mul(&yp).inverse()?);
    // ratio ≡ 1 mod p but need not be 1 + O(s); split off the constant.
    let c0 = ratio.coeff(0);
    let r0 = c0.sqrt_with_residue(Some(1)).ok_or(FrobeniusError::WeierstrassDisk)?;
    let unit = ratio.scale(&c0.inverse()?).sqrt_one_plus()?.scale(&r0);
    let phy = yp.mul(&unit);
    let dphx = phx.derivative();
    let w0 = dphx.mul(&phy.inverse()?);
    let w1 = phx.mul(&w0);
    Ok([w0.truncate(order - 1), w1.truncate(order - 1)])
}
