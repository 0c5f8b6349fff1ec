//! Coleman integrals of α and β, and the double integrals ∫αβ, ∫βα, based
//! at the tangent vector at the origin.
//!
//! Internally everything is expressed with ω₀ = dx/Y = 2α and ω₁ = x dx/Y = 2β:
//! F_i = ∫ω_i and G_ij = ∫F_j ω_i. Then log_α = F₀/2, log_β = F₁/2,
//! D₂ = ∫αβ = G₀₁/4 (so dD₂ = log_β·α) and ∫βα = G₁₀/4.
//!
//! Constants on good disks come from Frobenius: with φ*ω_i = Σ_j M_ji ω_j + dg_i,
//!
//!   F_i∘φ  = Σ_j M_ji F_j + g_i + c_i,
//!   G_ij∘φ = Σ_kl M_ki M_lj G_kl + g_i Σ_l M_lj F_l + c_j F_i∘φ + E_ij + C_ij,
//!
//! where dE_ij = S_ij(x) dx is a rational form in x alone. The constants c_i
//! and C_ij are read off in the disk of the origin, where the expansions are
//! pinned by the base point. Weierstrass disks use the negation symmetry for
//! single integrals and multiplication by 2 for D₂.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, DiskKind, Model, ResidueDisk, WeierstrassCurve};
use crate::error::ColemanError;
use crate::etale::CubicAlgebra;
use crate::field::FieldElement;
use crate::padic::{ilog, PadicNumber};
use crate::poly::Poly;
use crate::rigidcoh::{disk_chart, frobenius_on_origin_parameter, FrobeniusData};
use crate::series::{LogSeries, TruncatedSeries};

type Series = TruncatedSeries<PadicNumber>;

/// Which integrand a function integrates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Word {
    /// log_α = ∫α.
    A,
    /// log_β = ∫β.
    B,
    /// D₂ = ∫αβ with d(∫αβ) = log_β·α.
    AB,
    /// ∫βα with d(∫βα) = log_α·β.
    BA,
}

impl Word {
    pub fn name(self) -> &'static str {
        match self {
            Word::A => "log_alpha",
            Word::B => "log_beta",
            Word::AB => "D2",
            Word::BA => "D2_reversed",
        }
    }

    fn length(self) -> i32 {
        match self {
            Word::A | Word::B => 1,
            Word::AB | Word::BA => 2,
        }
    }
}

/// Expansion of a Coleman function on one residue disk, in the disk
/// parameter s (x − x0 on good disks, Y on Weierstrass disks).
#[derive(Clone, Debug)]
pub struct DiskFunction {
    pub disk: ResidueDisk,
    pub series: Series,
}

#[derive(Clone, Debug)]
pub struct ColemanFunction {
    pub word: Word,
    pub p: u32,
    /// Digits certified for values.
    pub precision: i32,
    /// Expansion on the disk of the origin in t = −x/y: zero constant term,
    /// a log t part only for the double integrals.
    pub e_disk: LogSeries<PadicNumber>,
    pub disks: Vec<DiskFunction>,
    curve: WeierstrassCurve,
}

/// Locate a point of X(Z_p): its disk and the disk parameter.
pub fn disk_parameter(
    curve: &WeierstrassCurve,
    disks: &[ResidueDisk],
    z: &CurvePoint<PadicNumber>,
) -> Result<(usize, PadicNumber), ColemanError> {
    let CurvePoint::Affine(x, y) = z else {
        return Err(ColemanError::OriginDisk);
    };
    if x.valuation() < 0 || y.valuation() < 0 {
        return Err(ColemanError::OriginDisk);
    }
    let i = disks.iter().position(|d| d.contains(x, y)).ok_or(ColemanError::NotIntegral)?;
    let d = &disks[i];
    let s = match d.kind {
        DiskKind::Good => x - &d.x0,
        DiskKind::Weierstrass => short_y(curve, x, y),
    };
    Ok((i, s))
}

/// Y = y + (a1 x + a3)/2.
pub fn short_y(curve: &WeierstrassCurve, x: &PadicNumber, y: &PadicNumber) -> PadicNumber {
    let a = curve.ainvs();
    let one = PadicNumber::one(x.prime(), x.precision().min(y.precision()));
    let lin = &(&one.from_bigint_like(&a[0]) * x) + &one.from_bigint_like(&a[2]);
    y + &lin.div_int(2)
}

/// Evaluate a Laurent series at t with v(t) ≥ 1, bounding the omitted tail.
fn laurent_eval(s: &Series, t: &PadicNumber, log_weight: i32) -> PadicNumber {
    let lo = s.start().min(0);
    let shifted = s.shift(-lo);
    let floor = shifted.min_valuation().unwrap_or(0).min(0);
    let v = shifted.eval_with_tail(t, floor, log_weight);
    if lo == 0 {
        v
    } else {
        &v * &t.pow(lo as i64).expect("t is nonzero")
    }
}

impl ColemanFunction {
    pub fn curve(&self) -> &WeierstrassCurve {
        &self.curve
    }

    /// Value at a point of X(Z_p) outside the disk of the origin.
    pub fn evaluate(&self, z: &CurvePoint<PadicNumber>) -> Result<PadicNumber, ColemanError> {
        let disks: Vec<ResidueDisk> = self.disks.iter().map(|d| d.disk.clone()).collect();
        let (i, s) = disk_parameter(&self.curve, &disks, z)?;
        Ok(self.evaluate_in_disk(i, &s))
    }

    /// Value at disk parameter s (v(s) ≥ 1) of disk `i`.
    pub fn evaluate_in_disk(&self, i: usize, s: &PadicNumber) -> PadicNumber {
        let series = &self.disks[i].series;
        let floor = series.min_valuation().unwrap_or(0).min(0);
        series.eval_with_tail(s, floor, self.word.length()).with_precision(self.precision)
    }

    /// Value on the disk of the origin at parameter t (v(t) ≥ 1), with the
    /// Iwasawa branch for log t.
    pub fn evaluate_at_origin_parameter(&self, t: &PadicNumber) -> Result<PadicNumber, ColemanError> {
        let mut acc = laurent_eval(self.e_disk.power_part(), t, self.word.length());
        if self.e_disk.log_degree() > 0 {
            let lt = t.log()?;
            let mut lp = lt.clone();
            for part in &self.e_disk.parts()[1..] {
                acc = &acc + &(&laurent_eval(part, t, self.word.length()) * &lp);
                lp = &lp * &lt;
            }
        }
        Ok(acc.with_precision(self.precision))
    }
}

/// Rational functions Σ_n c_n(x) f(x)^{-n}; level 0 is a polynomial and
/// higher levels are kept at degree ≤ 2.
#[derive(Clone, Debug)]
struct FLaurent {
    levels: Vec<Poly<PadicNumber>>,
}

struct FRing {
    f: Poly<PadicNumber>,
    df: Poly<PadicNumber>,
    /// v with v f' ≡ 1 mod f.
    v: Poly<PadicNumber>,
    one: PadicNumber,
    /// Fixed modulus.
    r: i32,
}

impl FRing {
    fn fix(&self, a: &Poly<PadicNumber>) -> Poly<PadicNumber> {
        Poly::new(&self.one, a.coeffs().iter().map(|c| c.lift_to(self.r)).collect())
    }

    fn zero(&self) -> Poly<PadicNumber> {
        Poly::zero(&self.one)
    }

    fn normalize(&self, mut levels: Vec<Poly<PadicNumber>>) -> FLaurent {
        for n in (1..levels.len()).rev() {
            if levels[n].len() > 3 {
                let (q, r) = levels[n].divrem_monic(&self.f);
                levels[n] = self.fix(&r);
                levels[n - 1] = self.fix(&levels[n - 1].add(&q));
            }
        }
        if let Some(l0) = levels.first_mut() {
            *l0 = self.fix(l0);
        }
        while levels.len() > 1 && levels.last().is_some_and(|l| l.is_zero()) {
            levels.pop();
        }
        FLaurent { levels }
    }

    fn add(&self, a: &FLaurent, b: &FLaurent) -> FLaurent {
        let n = a.levels.len().max(b.levels.len());
        let z = self.zero();
        let levels = (0..n)
            .map(|k| self.fix(&a.levels.get(k).unwrap_or(&z).add(b.levels.get(k).unwrap_or(&z))))
            .collect();
        FLaurent { levels }
    }

    fn sub(&self, a: &FLaurent, b: &FLaurent) -> FLaurent {
        self.add(a, &self.scale(b, &self.one.mul_int(-1)))
    }

    fn scale(&self, a: &FLaurent, c: &PadicNumber) -> FLaurent {
        FLaurent { levels: a.levels.iter().map(|l| self.fix(&l.scale(c))).collect() }
    }

    fn mul(&self, a: &FLaurent, b: &FLaurent) -> FLaurent {
        let mut out = vec![self.zero(); a.levels.len() + b.levels.len() - 1];
        for (i, x) in a.levels.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.levels.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = self.fix(&out[i + j].add(&x.mul(y)));
            }
        }
        self.normalize(out)
    }

    fn mul_poly(&self, a: &FLaurent, q: &Poly<PadicNumber>) -> FLaurent {
        self.normalize(a.levels.iter().map(|l| self.fix(&l.mul(q))).collect())
    }

    /// Multiply by f: each level drops by one.
    fn mul_f(&self, a: &FLaurent) -> FLaurent {
        let mut levels = vec![self.fix(&a.levels[0].mul(&self.f))];
        if a.levels.len() > 1 {
            levels[0] = self.fix(&levels[0].add(&a.levels[1]));
            levels.extend(a.levels[2..].iter().cloned());
        }
        self.normalize(levels)
    }

    fn derivative(&self, a: &FLaurent) -> FLaurent {
        let mut out = vec![self.zero(); a.levels.len() + 1];
        for (n, c) in a.levels.iter().enumerate() {
            out[n] = self.fix(&out[n].add(&c.derivative()));
            if n > 0 {
                let t = c.mul(&self.df).scale(&self.one.mul_int(-(n as i64)));
                out[n + 1] = self.fix(&out[n + 1].add(&t));
            }
        }
        self.normalize(out)
    }

    /// Primitive: polynomial part, higher levels, and the degree ≤ 2
    /// residue numerator c₁ of c₁/f.
    fn integrate(&self, a: &FLaurent) -> Primitive {
        let mut c = a.levels.clone();
        let top = c.len() - 1;
        let mut h = vec![self.zero(); top.max(1)];
        for n in (2..=top).rev() {
            let cn = self.fix(&c[n]);
            if cn.is_zero() {
                continue;
            }
            let (_, vv) = cn.mul(&self.v).divrem_monic(&self.f);
            let vv = self.fix(&vv);
            let (uu, _) = cn.sub(&vv.mul(&self.df)).divrem_monic(&self.f);
            let k = (n - 1) as i64;
            h[n - 1] = self.fix(&vv.scale(&self.one.div_int(-k)));
            let dv = vv.derivative().scale(&self.one.div_int(k));
            c[n - 1] = self.fix(&c[n - 1].add(&uu).add(&dv));
        }
        let res = if top >= 1 { self.fix(&c[1]) } else { self.zero() };
        let c0 = &c[0];
        let poly = Poly::new(
            &self.one,
            std::iter::once(PadicNumber::exact_zero(self.one.prime()))
                .chain(c0.coeffs().iter().enumerate().map(|(k, x)| x.div_int(k as i64 + 1).lift_to(self.r)))
                .collect(),
        );
        Primitive { poly, h: FLaurent { levels: h }, res }
    }
}

/// Π(x) + Σ_{n≥1} h_n(x) f^{-n} + Tr(res(T)/f'(T) · log(x − T)), with a
/// normalising constant subtracted.
#[derive(Clone, Debug)]
struct Primitive {
    poly: Poly<PadicNumber>,
    /// h.levels[n] multiplies f^{-n}; level 0 unused.
    h: FLaurent,
    res: Poly<PadicNumber>,
}

impl Primitive {
    /// Rational part Π + h at a point with f(x) a unit.
    fn rational_at(&self, ring: &FRing, x: &PadicNumber) -> PadicNumber {
        let fx_inv = ring.f.eval(x).inverse().expect("f(x) is a unit off Weierstrass disks");
        let mut inner = PadicNumber::exact_zero(x.prime());
        for hn in self.h.levels.iter().skip(1).rev() {
            inner = &(&inner + &hn.eval(x)) * &fx_inv;
        }
        &self.poly.eval(x) + &inner
    }

    fn log_part_at(&self, ring: &FRing, alg: &CubicAlgebra, x: &PadicNumber) -> Result<PadicNumber, ColemanError> {
        if self.res.is_zero() {
            return Ok(PadicNumber::exact_zero(x.prime()));
        }
        let coef = alg.mul(&alg.eval_poly(&self.res), &alg.eval_poly(&ring.v));
        let arg = alg.sub(&alg.scalar(x), &alg.t());
        let lg = alg
            .log_unit(&arg)
            .ok_or_else(|| ColemanError::Inconsistent("x − T is not a unit".into()))?;
        Ok(alg.trace(&alg.mul(&coef, &lg)))
    }

    /// Constant term of Π + h on the disk of the origin.
    fn origin_constant(&self, x: &Series, f_of_x: &Series) -> Result<PadicNumber, ColemanError> {
        let finv = f_of_x.inverse()?;
        let mut inner = Series::zero(x.proto(), finv.order());
        for hn in self.h.levels.iter().skip(1).rev() {
            inner = inner.add(&hn.eval_series(x)).mul(&finv);
        }
        Ok(self.poly.eval_series(x).add(&inner).coeff(0))
    }
}

/// Constants of the relation D₂([n]P) = n² D₂(P) − log ψ_n(P) + K·log_α(P) + C.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiplicationConstants {
    pub n: u32,
    pub k: PadicNumber,
    pub c: PadicNumber,
    /// Valuation of the fitted relation's residual at a third point.
    pub residual_valuation: i32,
}

/// All four Coleman functions for one curve, prime and precision.
#[derive(Clone, Debug)]
pub struct ColemanIntegrals {
    pub curve: WeierstrassCurve,
    pub p: u32,
    /// Target precision N.
    pub n: i32,
    /// Working precision.
    pub prec: i32,
    pub frob: FrobeniusData,
    pub disks: Vec<ResidueDisk>,
    /// c_i.
    pub single_constants: [PadicNumber; 2],
    /// C_ij.
    pub double_constants: [[PadicNumber; 2]; 2],
    /// F_i(P0) at disk centres (internal normalisation).
    pub centre_single: Vec<[PadicNumber; 2]>,
    /// G_ij(P0) at disk centres; for Weierstrass disks the value at the
    /// anchor point s = p.
    pub centre_double: Vec<[[PadicNumber; 2]; 2]>,
    pub multiplication: BTreeMap<u32, MultiplicationConstants>,
    /// Digits declared lost by the rational primitive of the correction form.
    pub declared_loss: i32,
    functions: [ColemanFunction; 4],
    e_x: Series,
    e_y: Series,
}

fn rat(q: &BigRational, one: &PadicNumber) -> PadicNumber {
    if q.is_zero() {
        PadicNumber::exact_zero(one.prime())
    } else {
        PadicNumber::from_rational(one.prime(), q, one.precision())
    }
}

/// Solve A x = b by Gaussian elimination with valuation pivoting.
pub fn solve_linear(mut a: Vec<Vec<PadicNumber>>, mut b: Vec<PadicNumber>) -> Result<Vec<PadicNumber>, ColemanError> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].valuation())
            .ok_or_else(|| ColemanError::SingularSystem(format!("no pivot in column {col}")))?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inverse()?;
        for r in 0..n {
            if r == col || a[r][col].is_exact_zero() {
                continue;
            }
            let m = &a[r][col] * &inv;
            for c in col..n {
                let t = &m * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
            let t = &m * &b[col];
            b[r] = &b[r] - &t;
        }
    }
    Ok((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn series_order_for(p: u32, prec: i32, weight: i32) -> i32 {
    let mut t = prec + 2;
    while t - weight * ilog(p, t as u64) < prec + 2 {
        t += 1;
    }
    t
}

impl ColemanIntegrals {
    pub fn new(curve: &WeierstrassCurve, frob: &FrobeniusData) -> Result<Self, ColemanError> {
        let p = frob.p;
        let prec = frob.precision();
        let one = PadicNumber::one(p, prec);
        let disks = curve.residue_disks(p, prec)?;
        let m = |j: usize, i: usize| frob.m(j, i).clone();

        // Disk of the origin.
        let me = (4 * p as i32 + 20).max(prec + 12 + 2 * ilog(p, prec as u64 + 12));
        let ex = curve.local_expansion_at_origin(me as usize + 4)?.map(&one, |q| rat(q, &one));
        let a = curve.ainvs();
        let a1 = one.from_bigint_like(&a[0]);
        let a3 = one.from_bigint_like(&a[2]);
        let half = one.div_int(2);
        let e_x = ex.x.truncate(me);
        let e_y = ex.y.truncate(me);
        let e_big_y = e_y.add(&e_x.scale(&a1).add_constant(&a3).scale(&half));
        let w = [ex.alpha.scale_int(2).truncate(me), ex.beta.scale_int(2).truncate(me)];
        let fe = [w[0].integrate_no_log()?, w[1].integrate_no_log()?];
        let n_norm = {
            let f0 = &fe[0];
            let f1 = &fe[1];
            [
                [f0.mul(f0).coeff(0).fmul(&half), PadicNumber::exact_zero(p)],
                [f0.mul(f1).coeff(0), f1.mul(f1).coeff(0).fmul(&half)],
            ]
        };
        let ge: [[LogSeries<PadicNumber>; 2]; 2] = std::array::from_fn(|i| {
            std::array::from_fn(|j| fe[j].mul(&w[i]).integrate().add_constant(&n_norm[i][j]))
        });

        let phi = frobenius_on_origin_parameter(curve, p, prec, me)?;
        let u0 = phi.coeff(p as i32);
        let log_u0 = u0.log()?;
        let kappa = [fe[0].compose(&phi)?.coeff(0), fe[1].compose(&phi)?.coeff(0)];
        let g_e = [
            frob.primitives[0].series(&e_x, &e_big_y)?,
            frob.primitives[1].series(&e_x, &e_big_y)?,
        ];
        let c = [&kappa[0] - &g_e[0].coeff(0), &kappa[1] - &g_e[1].coeff(0)];
        let mut cc: [[PadicNumber; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| PadicNumber::exact_zero(p)));
        for i in 0..2 {
            for j in 0..2 {
                let gphi = ge[i][j].power_part().compose(&phi)?.coeff(0);
                let logc = ge[i][j].part(1).map(|s| s.coeff(0)).unwrap_or_else(|| PadicNumber::exact_zero(p));
                let ct_gphi = &gphi + &(&logc * &log_u0);
                let mf = fe[0].scale(&m(0, j)).add(&fe[1].scale(&m(1, j)));
                let ct_gmf = g_e[i].mul(&mf).coeff(0);
                let mut acc = &(&ct_gphi - &ct_gmf) - &(&c[j] * &kappa[i]);
                for k in 0..2 {
                    for l in 0..2 {
                        acc = &acc - &(&(&m(k, i) * &m(l, j)) * &n_norm[k][l]);
                    }
                }
                cc[i][j] = acc;
            }
        }

        // The correction forms S_ij dx and their primitives.
        let top = frob.primitives.iter().map(|g| g.levels()).max().unwrap_or(0);
        let loss = ilog(p, 2 * top as u64 + 2) + 2;
        let r = prec + loss;
        let rone = PadicNumber::one(p, r);
        let f = curve.short_poly(&rone);
        let fq = curve.short_poly(&BigRational::from_integer(BigInt::from(1)));
        let (_, vq) = Poly::bezout(&fq, &fq.derivative()).ok_or(crate::error::CurveError::Singular)?;
        let ring = FRing { df: f.derivative(), v: vq.map(&rone, |q| rat(q, &rone)), f, one: rone.clone(), r };
        let rr: Vec<FLaurent> = frob
            .primitives
            .iter()
            .map(|g| {
                let mut levels = vec![ring.fix(&Poly::new(&rone, g.y_poly.clone()))];
                levels.extend(g.inv.iter().map(|v| ring.fix(&Poly::new(&rone, v.clone()))));
                ring.normalize(levels)
            })
            .collect();
        let drr: Vec<FLaurent> = rr.iter().map(|x| ring.derivative(x)).collect();
        let mpoly: Vec<Poly<PadicNumber>> =
            (0..2).map(|i| ring.fix(&Poly::new(&rone, vec![m(0, i), m(1, i)]))).collect();
        let half_df = ring.fix(&ring.df.scale(&rone.div_int(2)));
        let mut prims: Vec<Vec<Primitive>> = Vec::new();
        let mut e_consts: Vec<Vec<PadicNumber>> = Vec::new();
        let e_f = e_big_y.mul(&e_big_y);
        for i in 0..2 {
            let mut row = Vec::new();
            let mut crow = Vec::new();
            for j in 0..2 {
                let rij = ring.mul(&rr[i], &rr[j]);
                let t1 = ring.mul_poly(&rij, &half_df);
                let t2 = ring.mul_f(&ring.mul(&rr[j], &drr[i]));
                let t3 = ring.mul_poly(&rr[j], &mpoly[i]);
                let t4 = ring.mul_poly(&rr[i], &mpoly[j]);
                let s = ring.sub(&ring.add(&ring.add(&t1, &t2), &t3), &t4);
                let prim = ring.integrate(&s);
                crow.push(prim.origin_constant(&e_x, &e_f)?.with_precision(prec));
                row.push(prim);
            }
            prims.push(row);
            e_consts.push(crow);
        }
        let alg = CubicAlgebra::new(&ring.f);

        // Centres of good disks.
        let mmat = |i: usize, j: usize| m(j, i);
        let mut centre_single = Vec::new();
        let mut centre_double = Vec::new();
        let big_a = |ij: usize, kl: usize| {
            let (i, j) = (ij / 2, ij % 2);
            let (k, l) = (kl / 2, kl % 2);
            &m(k, i) * &m(l, j)
        };
        for d in &disks {
            if d.kind == DiskKind::Weierstrass {
                centre_single.push([PadicNumber::exact_zero(p), PadicNumber::exact_zero(p)]);
                centre_double.push(std::array::from_fn(|_| std::array::from_fn(|_| PadicNumber::exact_zero(p))));
                continue;
            }
            let (x0, y0) = (&d.x0, &d.y0);
            let gp = [frob.primitives[0].eval(x0, y0), frob.primitives[1].eval(x0, y0)];
            let amat: Vec<Vec<PadicNumber>> = (0..2)
                .map(|i| (0..2).map(|j| &PadicNumber::from_i64(p, (i == j) as i64, prec) - &mmat(i, j)).collect())
                .collect();
            let fv = solve_linear(amat, vec![&gp[0] + &c[0], &gp[1] + &c[1]])?;
            let mut rhs = Vec::new();
            for i in 0..2 {
                for j in 0..2 {
                    let x0r = x0.lift_to(r);
                    let eij = &(&prims[i][j].rational_at(&ring, &x0r) + &prims[i][j].log_part_at(&ring, &alg, &x0r)?)
                        - &e_consts[i][j];
                    let mf = &(&m(0, j) * &fv[0]) + &(&m(1, j) * &fv[1]);
                    let v = &(&(&gp[i] * &mf) + &(&c[j] * &fv[i])) + &(&eij.with_precision(prec) + &cc[i][j]);
                    rhs.push(v);
                }
            }
            let amat4: Vec<Vec<PadicNumber>> = (0..4)
                .map(|a| (0..4).map(|b| &PadicNumber::from_i64(p, (a == b) as i64, prec) - &big_a(a, b)).collect())
                .collect();
            let gv = solve_linear(amat4, rhs)?;
            centre_single.push([fv[0].clone(), fv[1].clone()]);
            centre_double.push([[gv[0].clone(), gv[1].clone()], [gv[2].clone(), gv[3].clone()]]);
        }

        let mut me_self = ColemanIntegrals {
            curve: curve.clone(),
            p,
            n: frob.n,
            prec,
            frob: frob.clone(),
            disks: disks.clone(),
            single_constants: c,
            double_constants: cc,
            centre_single,
            centre_double,
            multiplication: BTreeMap::new(),
            declared_loss: loss,
            functions: std::array::from_fn(|_| ColemanFunction {
                word: Word::A,
                p,
                precision: prec,
                e_disk: LogSeries::from_series(Series::zero(&one, 0)),
                disks: Vec::new(),
                curve: curve.clone(),
            }),
            e_x: e_x.clone(),
            e_y: e_y.clone(),
        };

        // Origin-disk functions (scaled to α, β).
        let quarter = one.div_int(4);
        let e_funcs = [
            LogSeries::from_series(fe[0].scale(&half)),
            LogSeries::from_series(fe[1].scale(&half)),
            ge[0][1].scale(&quarter),
            ge[1][0].scale(&quarter),
        ];
        for (k, word) in [Word::A, Word::B, Word::AB, Word::BA].into_iter().enumerate() {
            me_self.functions[k].word = word;
            me_self.functions[k].e_disk = e_funcs[k].clone();
        }

        // Single integrals on every disk first; the Weierstrass anchors for
        // D₂ need log_α, which needs these.
        let t_order = series_order_for(p, prec, 2);
        let neg_t = curve
            .negation_series(me as usize)?
            .truncate(me);
        let neg_t = TruncatedSeries::new(&one, neg_t.start(), (neg_t.start()..neg_t.end()).map(|k| rat(&neg_t.coeff(k), &one)).collect(), neg_t.order());
        let fw = [fe[0].compose(&neg_t)?.coeff(0).fmul(&half), fe[1].compose(&neg_t)?.coeff(0).fmul(&half)];
        let mut charts = Vec::new();
        let mut fser: Vec<[Series; 2]> = Vec::new();
        for (idx, d) in disks.iter().enumerate() {
            let chart = disk_chart(curve, d, prec, t_order)?;
            let base = match d.kind {
                DiskKind::Good => me_self.centre_single[idx].clone(),
                DiskKind::Weierstrass => fw.clone(),
            };
            if d.kind == DiskKind::Weierstrass {
                me_self.centre_single[idx] = fw.clone();
            }
            let f_s = [
                chart.omega[0].integrate_no_log()?.add_constant(&base[0]),
                chart.omega[1].integrate_no_log()?.add_constant(&base[1]),
            ];
            fser.push(f_s);
            charts.push(chart);
        }
        for (k, scale) in [(0usize, &half), (1, &half)] {
            me_self.functions[k].disks = disks
                .iter()
                .zip(&fser)
                .map(|(d, f)| DiskFunction { disk: d.clone(), series: f[k].scale(scale) })
                .collect();
        }
        me_self.functions[0].precision = min_precision(&me_self.functions[0]);
        me_self.functions[1].precision = min_precision(&me_self.functions[1]);
        // D₂ on the disk of the origin is needed for the multiplication chain.
        me_self.functions[2].precision = prec;

        let mut gser: Vec<[[Series; 2]; 2]> = Vec::new();
        for (idx, d) in disks.iter().enumerate() {
            let chart = &charts[idx];
            let f_s = &fser[idx];
            let raw: [[Series; 2]; 2] = std::array::from_fn(|i| {
                std::array::from_fn(|j| f_s[j].mul(&chart.omega[i]).integrate_no_log().expect("power series"))
            });
            let g = match d.kind {
                DiskKind::Good => {
                    let cd = &me_self.centre_double[idx];
                    std::array::from_fn(|i| std::array::from_fn(|j| raw[i][j].add_constant(&cd[i][j])))
                }
                DiskKind::Weierstrass => {
                    // Anchor D₂ at the point with Y = p through the doubling relation.
                    let sq = PadicNumber::from_i64(p, p as i64, prec);
                    let xq = chart.x.eval_with_tail(&sq, 0, 1);
                    let yq = &sq - &(&(&a1 * &xq) + &a3).div_int(2);
                    let q = CurvePoint::affine(xq, yq);
                    let d2q = me_self.d2_by_multiplication_raw(&q, Some(2))?;
                    let g01q = d2q.mul_int(4);
                    let off = &g01q - &raw[0][1].eval_with_tail(&sq, 0, 2);
                    let g01 = raw[0][1].add_constant(&off);
                    let prod = f_s[0].mul(&f_s[1]);
                    me_self.centre_double[idx] = [
                        [PadicNumber::exact_zero(p), g01q.clone()],
                        [PadicNumber::exact_zero(p), PadicNumber::exact_zero(p)],
                    ];
                    [
                        [f_s[0].mul(&f_s[0]).scale(&half), g01.clone()],
                        [prod.sub(&g01), f_s[1].mul(&f_s[1]).scale(&half)],
                    ]
                }
            };
            gser.push(g);
        }
        for (k, (i, j)) in [(2usize, (0usize, 1usize)), (3, (1, 0))] {
            me_self.functions[k].disks = disks
                .iter()
                .zip(&gser)
                .map(|(d, g)| DiskFunction { disk: d.clone(), series: g[i][j].scale(&quarter) })
                .collect();
            me_self.functions[k].precision = min_precision(&me_self.functions[k]);
        }
        Ok(me_self)
    }

    pub fn function(&self, w: Word) -> &ColemanFunction {
        match w {
            Word::A => &self.functions[0],
            Word::B => &self.functions[1],
            Word::AB => &self.functions[2],
            Word::BA => &self.functions[3],
        }
    }

    pub fn log_alpha(&self) -> &ColemanFunction {
        self.function(Word::A)
    }

    pub fn log_beta(&self) -> &ColemanFunction {
        self.function(Word::B)
    }

    pub fn d2(&self) -> &ColemanFunction {
        self.function(Word::AB)
    }

    pub fn d2_reversed(&self) -> &ColemanFunction {
        self.function(Word::BA)
    }

    /// The point of the disk of the origin with parameter t.
    pub fn origin_point(&self, t: &PadicNumber) -> CurvePoint<PadicNumber> {
        let x = laurent_eval(&self.e_x, t, 0);
        let y = laurent_eval(&self.e_y, t, 0);
        CurvePoint::affine(x, y)
    }

    /// t = −x/y for a point of the disk of the origin.
    pub fn origin_parameter(&self, z: &CurvePoint<PadicNumber>) -> Result<PadicNumber, ColemanError> {
        match z {
            CurvePoint::Affine(x, y) if x.valuation() < 0 => Ok(-&(x / y)),
            _ => Err(ColemanError::Inconsistent("point is not in the disk of the origin".into())),
        }
    }

    fn model(&self) -> Model<PadicNumber> {
        self.curve.model(&PadicNumber::one(self.p, self.prec))
    }

    fn multiplication_constants(&mut self, n: u32) -> Result<MultiplicationConstants, ColemanError> {
        if let Some(mc) = self.multiplication.get(&n) {
            return Ok(mc.clone());
        }
        let p = self.p;
        let model = self.model();
        let b = self.curve.b_like(&PadicNumber::one(p, self.prec));
        let mut rows = Vec::new();
        for k in 1..=3i64 {
            let t = PadicNumber::from_i64(p, k * p as i64 + if k == 3 { (p * p) as i64 } else { 0 }, self.prec);
            let q = self.origin_point(&t);
            let (x, y) = (q.x().unwrap().clone(), q.y().unwrap().clone());
            let nq = model.mul(&q, n as i64)?;
            let tn = self.origin_parameter(&nq)?;
            let d2n = self.d2().evaluate_at_origin_parameter(&tn)?;
            let d2q = self.d2().evaluate_at_origin_parameter(&t)?;
            let psi = model
                .division_values(&b, &x, &y, n as usize)
                .ok_or_else(|| ColemanError::Inconsistent("division values".into()))?;
            let lpsi = psi[n as usize].log()?;
            let h = &(&d2n - &d2q.mul_int((n * n) as i64)) + &lpsi;
            let la = self.log_alpha().evaluate_at_origin_parameter(&t)?;
            rows.push((la, h));
        }
        let one = PadicNumber::one(p, self.prec);
        let sol = solve_linear(
            vec![vec![rows[0].0.clone(), one.clone()], vec![rows[1].0.clone(), one.clone()]],
            vec![rows[0].1.clone(), rows[1].1.clone()],
        )?;
        let resid = &(&rows[2].1 - &(&sol[0] * &rows[2].0)) - &sol[1];
        let mc = MultiplicationConstants {
            n,
            k: sol[0].clone(),
            c: sol[1].clone(),
            residual_valuation: if resid.is_zero() { resid.precision() } else { resid.valuation() },
        };
        self.multiplication.insert(n, mc.clone());
        Ok(mc)
    }

    /// D₂(P) from D₂(nP), where n is the order of the reduction of P.
    pub fn d2_by_multiplication(&mut self, z: &CurvePoint<PadicNumber>) -> Result<PadicNumber, ColemanError> {
        self.d2_by_multiplication_raw(z, None)
    }

    fn d2_by_multiplication_raw(&mut self, z: &CurvePoint<PadicNumber>, order: Option<u32>) -> Result<PadicNumber, ColemanError> {
        let model = self.model();
        let CurvePoint::Affine(x, y) = z else { return Err(ColemanError::OriginDisk) };
        let n = match order {
            Some(n) => n,
            None => {
                let mut acc = z.clone();
                let mut n = 1u32;
                loop {
                    if let CurvePoint::Affine(ax, _) = &acc {
                        if ax.valuation() < 0 {
                            break;
                        }
                    } else {
                        return Err(ColemanError::Inconsistent("torsion point".into()));
                    }
                    acc = model.add(&acc, z)?;
                    n += 1;
                    if n > 4 * self.p + 8 {
                        return Err(ColemanError::Inconsistent("reduction order not found".into()));
                    }
                }
                n
            }
        };
        let mc = self.multiplication_constants(n)?;
        let nz = model.mul(z, n as i64)?;
        let tn = self.origin_parameter(&nz)?;
        let d2n = self.d2().evaluate_at_origin_parameter(&tn)?;
        let la = self.log_alpha().evaluate_at_origin_parameter(&tn)?.div_int(n as i64);
        let b = self.curve.b_like(&PadicNumber::one(self.p, self.prec));
        let psi = model
            .division_values(&b, x, y, n as usize)
            .ok_or_else(|| ColemanError::Inconsistent("division values".into()))?;
        let lpsi = psi[n as usize].log()?;
        let num = &(&(&d2n + &lpsi) - &(&mc.k * &la)) - &mc.c;
        Ok(num.div_int((n * n) as i64))
    }
}

fn min_precision(f: &ColemanFunction) -> i32 {
    f.disks.iter().map(|d| d.series.coeff(0).precision()).min().unwrap_or(f.precision).min(f.precision)
}

/// log_α or log_β as a Coleman function.
pub fn single_integral(word: Word, curve: &WeierstrassCurve, frob: &FrobeniusData) -> Result<ColemanFunction, ColemanError> {
    assert!(matches!(word, Word::A | Word::B), "single integrals are A or B");
    Ok(ColemanIntegrals::new(curve, frob)?.function(word).clone())
}

/// D₂ = ∫αβ as a Coleman function.
pub fn double_integral(curve: &WeierstrassCurve, frob: &FrobeniusData) -> Result<ColemanFunction, ColemanError> {
    Ok(ColemanIntegrals::new(curve, frob)?.d2().clone())
}
