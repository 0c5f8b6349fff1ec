//! Weierstrass curves over Q: group law, reduction, point counts, residue
//! disks and the formal expansions of x, y, α, β at the origin.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CurveError;
use crate::field::{FieldElement, Fp};
use crate::padic::PadicNumber;
use crate::poly::Poly;
use crate::series::TruncatedSeries;

/// Integral model y² + a1xy + a3y = x³ + a2x² + a4x + a6.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeierstrassCurve {
    a: [BigInt; 5],
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint<K> {
    Infinity,
    Affine(K, K),
}

impl<K: Clone> CurvePoint<K> {
    pub fn affine(x: K, y: K) -> Self {
        CurvePoint::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&K> {
        match self {
            CurvePoint::Affine(x, _) => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&K> {
        match self {
            CurvePoint::Affine(_, y) => Some(y),
            CurvePoint::Infinity => None,
        }
    }
}

pub type RationalPoint = CurvePoint<BigRational>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qi(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Parse a rational written `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<BigRational, CurveError> {
    let s = s.trim();
    let bad = || CurveError::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() || s.len() > 4096 {
        return Err(bad());
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Parse `X,Y` into a rational affine point.
pub fn parse_point(s: &str) -> Result<RationalPoint, CurveError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CurveError::Parse(format!("expected X,Y, got {s:?}")));
    }
    Ok(CurvePoint::Affine(parse_rational(parts[0])?, parse_rational(parts[1])?))
}

/// The curve's coefficients specialised to a field.
#[derive(Clone, Debug)]
pub struct Model<K> {
    pub a1: K,
    pub a2: K,
    pub a3: K,
    pub a4: K,
    pub a6: K,
}

impl<K: FieldElement> Model<K> {
    /// y² + a1xy + a3y − (x³ + a2x² + a4x + a6).
    pub fn residual(&self, x: &K, y: &K) -> K {
        let lhs = y.fmul(y).fadd(&self.a1.fmul(x).fmul(y)).fadd(&self.a3.fmul(y));
        let rhs = x.fmul(x).fmul(x).fadd(&self.a2.fmul(x).fmul(x)).fadd(&self.a4.fmul(x)).fadd(&self.a6);
        lhs.fsub(&rhs)
    }

    pub fn is_on_curve(&self, p: &CurvePoint<K>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => self.residual(x, y).fis_zero(),
        }
    }

    pub fn neg(&self, p: &CurvePoint<K>) -> CurvePoint<K> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                CurvePoint::Affine(x.clone(), y.fneg().fsub(&self.a1.fmul(x)).fsub(&self.a3))
            }
        }
    }

    /// 2y + a1x + a3, the denominator of α.
    pub fn two_y(&self, x: &K, y: &K) -> K {
        y.fmul_int(2).fadd(&self.a1.fmul(x)).fadd(&self.a3)
    }

    pub fn add(&self, p: &CurvePoint<K>, q: &CurvePoint<K>) -> Result<CurvePoint<K>, CurveError> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return Ok(q.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine(a, b), CurvePoint::Affine(c, d)) => (a, b, c, d),
        };
        let dx = x2.fsub(x1);
        let (lambda, nu) = if dx.fis_zero() {
            let sum = y1.fadd(y2).fadd(&self.a1.fmul(x2)).fadd(&self.a3);
            if sum.fis_zero() {
                return Ok(CurvePoint::Infinity);
            }
            if !y1.fsub(y2).fis_zero() {
                return Err(CurveError::PrecisionExhausted);
            }
            let den = self.two_y(x1, y1);
            let num = x1.fmul(x1).fmul_int(3).fadd(&self.a2.fmul(x1).fmul_int(2)).fadd(&self.a4).fsub(&self.a1.fmul(y1));
            let num_nu = x1.fmul(x1).fmul(x1).fneg().fadd(&self.a4.fmul(x1)).fadd(&self.a6.fmul_int(2)).fsub(&self.a3.fmul(y1));
            let l = num.fdiv(&den).ok_or(CurveError::PrecisionExhausted)?;
            let n = num_nu.fdiv(&den).ok_or(CurveError::PrecisionExhausted)?;
            (l, n)
        } else {
            let l = y2.fsub(y1).fdiv(&dx).ok_or(CurveError::PrecisionExhausted)?;
            let n = y1.fmul(x2).fsub(&y2.fmul(x1)).fdiv(&dx).ok_or(CurveError::PrecisionExhausted)?;
            (l, n)
        };
        let x3 = lambda.fmul(&lambda).fadd(&self.a1.fmul(&lambda)).fsub(&self.a2).fsub(x1).fsub(x2);
        let y3 = lambda.fadd(&self.a1).fmul(&x3).fneg().fsub(&nu).fsub(&self.a3);
        Ok(CurvePoint::Affine(x3, y3))
    }

    pub fn double(&self, p: &CurvePoint<K>) -> Result<CurvePoint<K>, CurveError> {
        self.add(p, p)
    }

    pub fn mul(&self, p: &CurvePoint<K>, n: i64) -> Result<CurvePoint<K>, CurveError> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &b)?;
            }
            k >>= 1;
            if k > 0 {
                b = self.double(&b)?;
            }
        }
        Ok(acc)
    }

    /// Division polynomial values ψ_0(P), ..., ψ_n(P).
    pub fn division_values(&self, b: &[K; 4], x: &K, y: &K, n: usize) -> Option<Vec<K>> {
        let [b2, b4, b6, b8] = b;
        let one = x.one_like();
        let x2 = x.fmul(x);
        let x3 = x2.fmul(x);
        let x4 = x3.fmul(x);
        let psi2 = self.two_y(x, y);
        let psi3 = x4.fmul_int(3).fadd(&b2.fmul(&x3)).fadd(&b4.fmul(&x2).fmul_int(3)).fadd(&b6.fmul(x).fmul_int(3)).fadd(b8);
        let x5 = x4.fmul(x);
        let x6 = x5.fmul(x);
        let inner = x6
            .fmul_int(2)
            .fadd(&b2.fmul(&x5))
            .fadd(&b4.fmul(&x4).fmul_int(5))
            .fadd(&b6.fmul(&x3).fmul_int(10))
            .fadd(&b8.fmul(&x2).fmul_int(10))
            .fadd(&b2.fmul(b8).fsub(&b4.fmul(b6)).fmul(x))
            .fadd(&b4.fmul(b8).fsub(&b6.fmul(b6)));
        let psi4 = psi2.fmul(&inner);
        let mut v = vec![x.zero_like(), one, psi2.clone(), psi3, psi4];
        // ψ_1 = 1 is applied symbolically so that inexact p-adic inputs keep
        // their relative precision.
        let times = |v: &[K], i: usize, a: K| if i == 1 { a } else { v[i].fmul(&a) };
        for k in 5..=n {
            let m = k / 2;
            let val = if k % 2 == 1 {
                v[m + 2].fmul(&v[m].fpow(3)).fsub(&times(&v, m - 1, v[m + 1].fpow(3)))
            } else {
                let t = v[m + 2].fmul(&v[m - 1].fpow(2)).fsub(&times(&v, m - 2, v[m + 1].fpow(2)));
                v[m].fmul(&t).fdiv(&psi2)?
            };
            v.push(val);
        }
        v.truncate(n + 1);
        Some(v)
    }
}

/// Formal expansions at the origin in the parameter t = −x/y.
#[derive(Clone, Debug)]
pub struct LocalExpansion<K: FieldElement> {
    pub x: TruncatedSeries<K>,
    pub y: TruncatedSeries<K>,
    /// Coefficient of dt in α = dx/(2y + a1x + a3).
    pub alpha: TruncatedSeries<K>,
    /// Coefficient of dt in β = xα.
    pub beta: TruncatedSeries<K>,
}

impl<K: FieldElement> LocalExpansion<K> {
    pub fn map<L: FieldElement>(&self, proto: &L, f: impl Fn(&K) -> L + Copy) -> LocalExpansion<L> {
        let conv = |s: &TruncatedSeries<K>| {
            TruncatedSeries::new(proto, s.start(), (s.start()..s.end()).map(|k| f(&s.coeff(k))).collect(), s.order())
        };
        LocalExpansion { x: conv(&self.x), y: conv(&self.y), alpha: conv(&self.alpha), beta: conv(&self.beta) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiskKind {
    /// 2y + a1x + a3 is a unit; parameter x − x0.
    Good,
    /// Contains a Weierstrass point; parameter Y = y + (a1x + a3)/2.
    Weierstrass,
}

/// A residue disk other than the one of the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueDisk {
    pub index: usize,
    pub xbar: u64,
    pub ybar: u64,
    pub kind: DiskKind,
    /// Centre in short-model coordinates (x0, Y0). For good disks this is
    /// the Frobenius-fixed point; for Weierstrass disks Y0 = 0.
    pub x0: PadicNumber,
    pub y0: PadicNumber,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub p: u64,
    pub a_p: i64,
    /// Affine points over F_p on the given model.
    pub points: Vec<(u64, u64)>,
}

impl WeierstrassCurve {
    pub fn new(a: [BigInt; 5]) -> Result<Self, CurveError> {
        let c = WeierstrassCurve { a };
        if c.discriminant().is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(c)
    }

    pub fn from_i64s(a: [i64; 5]) -> Result<Self, CurveError> {
        Self::new(a.map(BigInt::from))
    }

    /// Parse `a1,a2,a3,a4,a6`.
    pub fn parse(s: &str) -> Result<Self, CurveError> {
        let s = s.trim();
        let s = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(CurveError::Parse(format!("expected five comma-separated integers, got {}", parts.len())));
        }
        let mut a: [BigInt; 5] = Default::default();
        for (slot, txt) in a.iter_mut().zip(&parts) {
            if txt.is_empty() || txt.len() > 512 {
                return Err(CurveError::Parse(format!("bad coefficient {txt:?}")));
            }
            *slot = txt.parse().map_err(|_| CurveError::Parse(format!("bad coefficient {txt:?}")))?;
        }
        Self::new(a)
    }

    pub fn ainvs(&self) -> &[BigInt; 5] {
        &self.a
    }

    pub fn label(&self) -> String {
        self.a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn b_invariants(&self) -> [BigInt; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> BigInt {
        let [b2, b4, b6, b8] = self.b_invariants();
        -&b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    pub fn check_prime(&self, p: u32) -> Result<(), CurveError> {
        if p < 3 || p % 2 == 0 {
            return Err(CurveError::EvenPrime(p));
        }
        if !is_prime(p as u64) {
            return Err(CurveError::Parse(format!("{p} is not prime")));
        }
        if (self.discriminant() % BigInt::from(p)).is_zero() {
            return Err(CurveError::BadPrime(p));
        }
        Ok(())
    }

    pub fn model<K: FieldElement>(&self, proto: &K) -> Model<K> {
        let c = |n: &BigInt| proto.from_bigint_like(n);
        Model { a1: c(&self.a[0]), a2: c(&self.a[1]), a3: c(&self.a[2]), a4: c(&self.a[3]), a6: c(&self.a[4]) }
    }

    pub fn rational_model(&self) -> Model<BigRational> {
        self.model(&q(1))
    }

    pub fn b_like<K: FieldElement>(&self, proto: &K) -> [K; 4] {
        self.b_invariants().map(|b| proto.from_bigint_like(&b))
    }

    /// Coefficients (c0, c1, c2) of f(x) = x³ + c2x² + c1x + c0 with
    /// (y + (a1x + a3)/2)² = f(x).
    pub fn short_model(&self) -> [BigRational; 3] {
        let [b2, b4, b6, _] = self.b_invariants();
        [
            BigRational::new(b6, BigInt::from(4)),
            BigRational::new(b4, BigInt::from(2)),
            BigRational::new(b2, BigInt::from(4)),
        ]
    }

    /// f as a monic cubic over `proto`'s field.
    pub fn short_poly<K: FieldElement>(&self, proto: &K) -> Poly<K> {
        let [c0, c1, c2] = self.short_model();
        let conv = |r: &BigRational| proto.from_rational_like(r).expect("p-integral short model");
        Poly::new(proto, vec![conv(&c0), conv(&c1), conv(&c2), proto.one_like()])
    }

    pub fn is_on_curve(&self, p: &RationalPoint) -> bool {
        self.rational_model().is_on_curve(p)
    }

    pub fn add(&self, p: &RationalPoint, r: &RationalPoint) -> RationalPoint {
        self.rational_model().add(p, r).expect("exact arithmetic")
    }

    pub fn neg(&self, p: &RationalPoint) -> RationalPoint {
        self.rational_model().neg(p)
    }

    pub fn mul(&self, p: &RationalPoint, n: i64) -> RationalPoint {
        self.rational_model().mul(p, n).expect("exact arithmetic")
    }

    /// Order of a rational torsion point (at most 12 by Mazur), else `None`.
    pub fn torsion_order(&self, p: &RationalPoint) -> Option<u32> {
        let m = self.rational_model();
        let mut acc = p.clone();
        for k in 1..=12u32 {
            if acc.is_infinity() {
                return Some(k);
            }
            acc = m.add(&acc, p).expect("exact arithmetic");
        }
        let _ = acc;
        if p.is_infinity() {
            Some(1)
        } else {
            None
        }
    }

    /// Reduction of a p-integral point; `None` stands for the origin ē.
    pub fn reduce_point(&self, pt: &RationalPoint, p: u32) -> Result<Option<(u64, u64)>, CurveError> {
        self.check_prime(p)?;
        match pt {
            CurvePoint::Infinity => Ok(None),
            CurvePoint::Affine(x, y) => {
                let pb = BigInt::from(p);
                let red = |r: &BigRational| -> Result<u64, CurveError> {
                    if (r.denom() % &pb).is_zero() {
                        return Err(CurveError::NonIntegral(p));
                    }
                    let f = Fp::new(0, p as u64);
                    let v = f.from_bigint_like(r.numer()).fdiv(&f.from_bigint_like(r.denom())).unwrap();
                    Ok(v.value)
                };
                Ok(Some((red(x)?, red(y)?)))
            }
        }
    }

    /// Exhaustive count of E(F_p).
    pub fn count_points(&self, p: u32) -> Result<PointCount, CurveError> {
        self.check_prime(p)?;
        let pp = p as u64;
        let m = self.model(&Fp::new(1, pp));
        let mut points = Vec::new();
        for x in 0..pp {
            for y in 0..pp {
                if m.residual(&Fp::new(x as i64, pp), &Fp::new(y as i64, pp)).value == 0 {
                    points.push((x, y));
                }
            }
        }
        let a_p = pp as i64 + 1 - (points.len() as i64 + 1);
        assert!((a_p * a_p) as u64 <= 4 * pp, "Hasse bound violated");
        Ok(PointCount { p: pp, a_p, points })
    }

    /// Expansions of x, y, α, β in t = −x/y, all truncated at t^order.
    pub fn local_expansion_at_origin(&self, order: usize) -> Result<LocalExpansion<BigRational>, CurveError> {
        if order < 5 {
            return Err(CurveError::OrderTooSmall(5));
        }
        let m = order as i32;
        let w_order = m + 6;
        let one = q(1);
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|a| qi(&a));
        let t = TruncatedSeries::variable(&one, w_order);
        let t2 = t.mul(&t);
        let t3 = t2.mul(&t);
        // w = t³ + a1 t w + a2 t² w + a3 w² + a4 t w² + a6 w³, by fixed-point iteration.
        let mut w = t3.clone();
        for _ in 0..w_order {
            let w2 = w.mul_trunc(&w, w_order);
            let w3 = w2.mul_trunc(&w, w_order);
            let next = t3
                .add(&t.mul_trunc(&w, w_order).scale(&a1))
                .add(&t2.mul_trunc(&w, w_order).scale(&a2))
                .add(&w2.scale(&a3))
                .add(&t.mul_trunc(&w2, w_order).scale(&a4))
                .add(&w3.scale(&a6))
                .truncate(w_order);
            if next == w {
                break;
            }
            w = next;
        }
        let winv = w.inverse().map_err(|_| CurveError::Singular)?;
        let x = t.mul(&winv);
        let y = winv.neg();
        let den = y.scale_int(2).add(&x.scale(&a1)).add_constant(&a3);
        let alpha = x.derivative().div(&den).map_err(|_| CurveError::Singular)?;
        let beta = x.mul(&alpha);
        Ok(LocalExpansion { x: x.truncate(m), y: y.truncate(m), alpha: alpha.truncate(m), beta: beta.truncate(m) })
    }

    /// t∘[−1] as a series in t.
    pub fn negation_series(&self, order: usize) -> Result<TruncatedSeries<BigRational>, CurveError> {
        let e = self.local_expansion_at_origin(order + 4)?;
        let a1 = qi(&self.a[0]);
        let a3 = qi(&self.a[2]);
        let den = e.y.add(&e.x.scale(&a1)).add_constant(&a3);
        Ok(e.x.div(&den).map_err(|_| CurveError::Singular)?.truncate(order as i32))
    }

    /// Res(vα) where dv = β and v has no constant term.
    pub fn residue_pairing(&self, order: usize) -> Result<BigRational, CurveError> {
        let e = self.local_expansion_at_origin(order)?;
        if !e.beta.coeff(-1).is_zero() {
            return Err(CurveError::Singular);
        }
        let v = e.beta.integrate_no_log().map_err(|_| CurveError::Singular)?;
        Ok(v.mul(&e.alpha).coeff(-1))
    }

    /// Integral points with |x| ≤ bound, by direct search.
    pub fn integral_points(&self, bound: u64) -> Vec<(BigInt, BigInt)> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let mut out = Vec::new();
        let b = bound as i64;
        for xi in -b..=b {
            let x = BigInt::from(xi);
            // (2y + a1x + a3)² = D
            let s = a1 * &x + a3;
            let cubic: BigInt = &x * &x * &x + a2 * &x * &x + a4 * &x + a6;
            let d: BigInt = &s * &s + 4 * cubic;
            if d.is_negative() {
                continue;
            }
            let r = d.sqrt();
            if &r * &r != d {
                continue;
            }
            let mut roots = vec![r.clone()];
            if !r.is_zero() {
                roots.push(-r);
            }
            for r in roots {
                let twice = r - &s;
                if twice.is_even() {
                    out.push((x.clone(), twice / 2));
                }
            }
        }
        out.sort();
        out
    }

    /// Residue disks of E(F_p) minus ē, centred at Frobenius-fixed points
    /// (good disks) or Weierstrass points.
    pub fn residue_disks(&self, p: u32, prec: i32) -> Result<Vec<ResidueDisk>, CurveError> {
        let count = self.count_points(p)?;
        let one = PadicNumber::one(p, prec);
        let f = self.short_poly(&one);
        let df = f.derivative();
        let half = |v: i64| Fp::new(v, p as u64).fdiv(&Fp::new(2, p as u64)).unwrap().value;
        let a1 = Fp::new(0, p as u64).from_bigint_like(&self.a[0]).value;
        let a3 = Fp::new(0, p as u64).from_bigint_like(&self.a[2]).value;
        let mut disks = Vec::new();
        for (i, &(xb, yb)) in count.points.iter().enumerate() {
            let ybig = (yb + half(((a1 * xb + a3) % p as u64) as i64)) % p as u64;
            let (kind, x0, y0) = if ybig == 0 {
                // Hensel lift of the simple root of f.
                let mut r = PadicNumber::from_i64(p, xb as i64, prec);
                for _ in 0..(2 * prec.max(1) as usize).ilog2() + 2 {
                    let step = &f.eval(&r) / &df.eval(&r);
                    r = (&r - &step).lift_to(prec).with_precision(prec);
                }
                (DiskKind::Weierstrass, r, PadicNumber::exact_zero(p))
            } else {
                let x0 = if xb == 0 {
                    PadicNumber::exact_zero(p)
                } else {
                    PadicNumber::from_i64(p, xb as i64, prec).teichmuller().map_err(|_| CurveError::PrecisionExhausted)?
                };
                let fx = f.eval(&x0).with_precision(prec);
                let y0 = fx.sqrt_with_residue(Some(ybig as u32)).ok_or(CurveError::PrecisionExhausted)?;
                (DiskKind::Good, x0, y0)
            };
            disks.push(ResidueDisk { index: i, xbar: xb, ybar: yb, kind, x0, y0 });
        }
        Ok(disks)
    }
}

impl ResidueDisk {
    /// Whether a p-adic point (original model) lies in this disk.
    pub fn contains(&self, x: &PadicNumber, y: &PadicNumber) -> bool {
        x.valuation() >= 0
            && y.valuation() >= 0
            && x.residue() == Some(self.xbar as u32)
            && y.residue() == Some(self.ybar as u32)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rational number as a p-adic number at precision `prec`.
pub fn rational_to_padic(r: &BigRational, p: u32, prec: i32) -> PadicNumber {
    if r.is_zero() {
        return PadicNumber::exact_zero(p);
    }
    PadicNumber::from_rational(p, r, prec)
}

/// Integer point as a rational point.
pub fn integer_point(x: &BigInt, y: &BigInt) -> RationalPoint {
    CurvePoint::Affine(qi(x), qi(y))
}

/// Convert an exact rational point to Q_p (zero coordinates become O(p^prec)).
pub fn point_to_padic(pt: &RationalPoint, p: u32, prec: i32) -> CurvePoint<PadicNumber> {
    match pt {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine(x, y) => {
            let conv = |r: &BigRational| if r.is_zero() { PadicNumber::zero(p, prec) } else { PadicNumber::from_rational(p, r, prec) };
            CurvePoint::Affine(conv(x), conv(y))
        }
    }
}

/// Integer value of an integral rational, if any.
pub fn as_integer(r: &BigRational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// Small helper for tests and reports.
pub fn to_i64_pair(pt: &RationalPoint) -> Option<(i64, i64)> {
    match pt {
        CurvePoint::Affine(x, y) => Some((as_integer(x)?.to_i64()?, as_integer(y)?.to_i64()?)),
        CurvePoint::Infinity => None,
    }
}
