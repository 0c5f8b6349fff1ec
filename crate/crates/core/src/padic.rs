//! Capped absolute precision p-adic numbers.
//!
//! A value is `p^valuation * unit + O(p^abs_prec)` with `unit` coprime to p.
//! Zero comes in two flavours: the exact zero (valuation and precision both
//! `EXACT`) and the inexact zero `O(p^N)`, stored with `valuation == abs_prec`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PadicError;
use crate::field::FieldElement;

/// Marker for the valuation and precision of the exact zero.
pub const EXACT: i32 = i32::MAX;

thread_local! {
    static POWERS: RefCell<HashMap<u32, Vec<Rc<BigUint>>>> = RefCell::new(HashMap::new());
}

/// `p^k`, memoised per thread.
pub fn pow_p(p: u32, k: u32) -> Rc<BigUint> {
    POWERS.with(|cell| {
        let mut map = cell.borrow_mut();
        let table = map.entry(p).or_insert_with(|| vec![Rc::new(BigUint::one())]);
        while table.len() <= k as usize {
            let next = table.last().unwrap().as_ref() * p;
            table.push(Rc::new(next));
        }
        table[k as usize].clone()
    })
}

/// Largest e with p^e <= n (n >= 1).
pub fn ilog(p: u32, n: u64) -> i32 {
    let mut e = 0;
    let mut q = p as u64;
    while q <= n {
        e += 1;
        match q.checked_mul(p as u64) {
            Some(v) => q = v,
            None => break,
        }
    }
    e
}

/// p-adic valuation of a nonzero integer.
pub fn val_i64(p: u32, mut n: i64) -> i32 {
    assert!(n != 0);
    let mut v = 0;
    while n % p as i64 == 0 {
        n /= p as i64;
        v += 1;
    }
    v
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: u32,
    valuation: i32,
    unit: BigUint,
    abs_prec: i32,
}

fn clamp(x: i64) -> i32 {
    x.clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2) as i32
}

fn strip(p: u32, mut m: BigUint) -> (BigUint, i32) {
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return (m, v);
        }
        m = q;
        v += 1;
    }
}

fn mod_inverse(u: &BigUint, modulus: &BigUint) -> BigUint {
    if modulus.is_one() {
        return BigUint::zero();
    }
    let a = BigInt::from_biguint(Sign::Plus, u.clone());
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    let g = a.extended_gcd(&m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(&m).to_biguint().unwrap()
}

impl PadicNumber {
    pub fn exact_zero(p: u32) -> Self {
        PadicNumber { prime: p, valuation: EXACT, unit: BigUint::zero(), abs_prec: EXACT }
    }

    /// The inexact zero `O(p^prec)`.
    pub fn zero(p: u32, prec: i32) -> Self {
        PadicNumber { prime: p, valuation: prec, unit: BigUint::zero(), abs_prec: prec }
    }

    pub fn one(p: u32, prec: i32) -> Self {
        Self::from_i64(p, 1, prec)
    }

    /// Normalising constructor: `p^val * mant + O(p^prec)`.
    fn build(p: u32, val: i64, mant: BigUint, prec: i64) -> Self {
        let prec = clamp(prec);
        if val >= prec as i64 || mant.is_zero() {
            return Self::zero(p, prec);
        }
        let (m, extra) = strip(p, mant);
        let val = val + extra as i64;
        if val >= prec as i64 {
            return Self::zero(p, prec);
        }
        let val = val as i32;
        let modulus = pow_p(p, (prec - val) as u32);
        let unit = if m >= *modulus { m % modulus.as_ref() } else { m };
        PadicNumber { prime: p, valuation: val, unit, abs_prec: prec }
    }

    pub fn from_bigint(p: u32, n: &BigInt, prec: i32) -> Self {
        if n.is_zero() {
            return Self::zero(p, prec);
        }
        let (m, v) = strip(p, n.abs().to_biguint().unwrap());
        if v >= prec {
            return Self::zero(p, prec);
        }
        let modulus = pow_p(p, (prec - v) as u32);
        let mut u = m % modulus.as_ref();
        if n.is_negative() {
            u = modulus.as_ref() - u;
        }
        PadicNumber { prime: p, valuation: v, unit: u, abs_prec: prec }
    }

    pub fn from_i64(p: u32, n: i64, prec: i32) -> Self {
        Self::from_bigint(p, &BigInt::from(n), prec)
    }

    pub fn from_rational(p: u32, q: &BigRational, prec: i32) -> Self {
        if q.is_zero() {
            return Self::zero(p, prec);
        }
        let (num, vn) = strip(p, q.numer().abs().to_biguint().unwrap());
        let (den, vd) = strip(p, q.denom().abs().to_biguint().unwrap());
        let val = vn - vd;
        if val >= prec {
            return Self::zero(p, prec);
        }
        let modulus = pow_p(p, (prec - val) as u32);
        let mut u = (num * mod_inverse(&(den % modulus.as_ref()), &modulus)) % modulus.as_ref();
        if q.is_negative() {
            u = (modulus.as_ref() - u) % modulus.as_ref();
        }
        PadicNumber { prime: p, valuation: val, unit: u, abs_prec: prec }
    }

    /// Validating constructor used by deserialisation.
    pub fn from_parts(p: u32, valuation: i32, unit: BigUint, abs_prec: i32) -> Result<Self, PadicError> {
        if valuation == EXACT || abs_prec == EXACT {
            if valuation == EXACT && abs_prec == EXACT && unit.is_zero() {
                return Ok(Self::exact_zero(p));
            }
            return Err(PadicError::Malformed("inconsistent exact zero".into()));
        }
        if unit.is_zero() {
            if valuation != abs_prec {
                return Err(PadicError::Malformed("zero mantissa with valuation below precision".into()));
            }
            return Ok(Self::zero(p, abs_prec));
        }
        if valuation >= abs_prec {
            return Err(PadicError::Malformed("valuation not below precision".into()));
        }
        if (&unit % p).is_zero() {
            return Err(PadicError::Malformed("mantissa divisible by p".into()));
        }
        let rel = (abs_prec as i64 - valuation as i64) as u64;
        if rel > 100_000 || unit >= *pow_p(p, rel as u32) {
            return Err(PadicError::Malformed("mantissa out of range".into()));
        }
        Ok(PadicNumber { prime: p, valuation, unit, abs_prec })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Valuation; `EXACT` for the exact zero, the precision for `O(p^N)`.
    pub fn valuation(&self) -> i32 {
        self.valuation
    }

    pub fn precision(&self) -> i32 {
        self.abs_prec
    }

    pub fn relative_precision(&self) -> i32 {
        if self.is_zero() {
            0
        } else {
            self.abs_prec - self.valuation
        }
    }

    pub fn unit(&self) -> &BigUint {
        &self.unit
    }

    /// True for both the exact zero and `O(p^N)`.
    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.valuation == EXACT
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.valuation == 0
    }

    /// Image in F_p; `None` when the valuation is negative.
    pub fn residue(&self) -> Option<u32> {
        if self.valuation < 0 {
            return None;
        }
        if self.valuation > 0 || self.is_zero() {
            return Some(0);
        }
        Some((&self.unit % self.prime).to_u32().unwrap())
    }

    /// Lower the precision cap to `prec` (no-op if already lower).
    pub fn with_precision(&self, prec: i32) -> Self {
        if prec >= self.abs_prec {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero(self.prime, prec.min(self.abs_prec));
        }
        Self::build(self.prime, self.valuation as i64, self.unit.clone(), prec as i64)
    }

    /// Raise the precision cap by padding the mantissa with zero digits.
    ///
    /// This forgets the true error; only used where a separate argument bounds
    /// the error (fixed-modulus style reductions) and the caller re-caps later.
    pub fn lift_to(&self, prec: i32) -> Self {
        if self.is_exact_zero() || prec <= self.abs_prec {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero(self.prime, prec);
        }
        PadicNumber { abs_prec: prec, ..self.clone() }
    }

    /// Multiply by p^k exactly.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_exact_zero() {
            return self.clone();
        }
        PadicNumber {
            prime: self.prime,
            valuation: self.valuation + k,
            unit: self.unit.clone(),
            abs_prec: self.abs_prec + k,
        }
    }

    /// Multiply by an exact integer.
    pub fn mul_int(&self, n: i64) -> Self {
        if n == 0 {
            return Self::exact_zero(self.prime);
        }
        if self.is_exact_zero() {
            return self.clone();
        }
        let v = val_i64(self.prime, n);
        if self.is_zero() {
            return Self::zero(self.prime, self.abs_prec + v);
        }
        let modulus = pow_p(self.prime, (self.abs_prec - self.valuation) as u32);
        let q = n.unsigned_abs() / (self.prime as u64).pow(v as u32);
        let mut u = (&self.unit * BigUint::from(q)) % modulus.as_ref();
        if n < 0 {
            u = modulus.as_ref() - u;
        }
        PadicNumber {
            prime: self.prime,
            valuation: self.valuation + v,
            unit: u,
            abs_prec: self.abs_prec + v,
        }
    }

    /// Divide by an exact nonzero integer.
    pub fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero integer");
        if self.is_exact_zero() {
            return self.clone();
        }
        let v = val_i64(self.prime, n);
        if self.is_zero() {
            return Self::zero(self.prime, self.abs_prec - v);
        }
        let modulus = pow_p(self.prime, (self.abs_prec - self.valuation) as u32);
        let q = BigUint::from(n.unsigned_abs() / (self.prime as u64).pow(v as u32));
        let inv = mod_inverse(&(q % modulus.as_ref()), &modulus);
        let mut u = (&self.unit * inv) % modulus.as_ref();
        if n < 0 {
            u = (modulus.as_ref() - u) % modulus.as_ref();
        }
        PadicNumber {
            prime: self.prime,
            valuation: self.valuation - v,
            unit: u,
            abs_prec: self.abs_prec - v,
        }
    }

    fn check_prime(&self, o: &Self) {
        assert_eq!(self.prime, o.prime, "mixed primes in p-adic arithmetic");
    }

    fn add_impl(&self, o: &Self) -> Self {
        self.check_prime(o);
        if self.is_exact_zero() {
            return o.clone();
        }
        if o.is_exact_zero() {
            return self.clone();
        }
        let prec = self.abs_prec.min(o.abs_prec);
        let m = self.valuation.min(o.valuation);
        if m >= prec {
            return Self::zero(self.prime, prec);
        }
        let mut acc = BigUint::zero();
        for x in [self, o] {
            if !x.is_zero() && x.valuation < prec {
                let term = if x.valuation == m {
                    x.unit.clone()
                } else {
                    &x.unit * pow_p(self.prime, (x.valuation - m) as u32).as_ref()
                };
                acc += term;
            }
        }
        Self::build(self.prime, m as i64, acc, prec as i64)
    }

    fn neg_impl(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let modulus = pow_p(self.prime, (self.abs_prec - self.valuation) as u32);
        PadicNumber { unit: modulus.as_ref() - &self.unit, ..self.clone() }
    }

    fn mul_impl(&self, o: &Self) -> Self {
        self.check_prime(o);
        if self.is_exact_zero() || o.is_exact_zero() {
            return Self::exact_zero(self.prime);
        }
        let val = self.valuation as i64 + o.valuation as i64;
        let prec = (self.abs_prec as i64 + o.valuation as i64).min(o.abs_prec as i64 + self.valuation as i64);
        if self.is_zero() || o.is_zero() || val >= prec {
            return Self::zero(self.prime, clamp(prec));
        }
        let modulus = pow_p(self.prime, (prec - val) as u32);
        let unit = (&self.unit * &o.unit) % modulus.as_ref();
        PadicNumber { prime: self.prime, valuation: val as i32, unit, abs_prec: prec as i32 }
    }

    fn div_impl(&self, o: &Self) -> Result<Self, PadicError> {
        if self.prime != o.prime {
            return Err(PadicError::PrimeMismatch(self.prime, o.prime));
        }
        if o.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        let val = self.valuation as i64 - o.valuation as i64;
        if self.is_zero() {
            return Ok(Self::zero(self.prime, clamp(self.abs_prec as i64 - o.valuation as i64)));
        }
        let rel = (self.abs_prec - self.valuation).min(o.abs_prec - o.valuation);
        let modulus = pow_p(self.prime, rel as u32);
        let inv = mod_inverse(&(&o.unit % modulus.as_ref()), &modulus);
        let unit = (&self.unit % modulus.as_ref() * inv) % modulus.as_ref();
        Ok(PadicNumber {
            prime: self.prime,
            valuation: val as i32,
            unit,
            abs_prec: clamp(val + rel as i64),
        })
    }

    pub fn inverse(&self) -> Result<Self, PadicError> {
        if self.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let rel = self.relative_precision();
        let modulus = pow_p(self.prime, rel as u32);
        Ok(PadicNumber {
            prime: self.prime,
            valuation: -self.valuation,
            unit: mod_inverse(&self.unit, &modulus),
            abs_prec: rel - self.valuation,
        })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, PadicError> {
        self.div_impl(o)
    }

    pub fn pow(&self, e: i64) -> Result<Self, PadicError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        if e == 0 {
            return Ok(Self::one(self.prime, self.relative_precision().max(1)));
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul_impl(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_impl(&base);
            }
        }
        Ok(acc.unwrap())
    }

    /// Representative integer `p^v * unit` when the valuation is non-negative.
    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.valuation < 0 {
            return None;
        }
        let m = &self.unit * pow_p(self.prime, self.valuation as u32).as_ref();
        Some(BigInt::from_biguint(Sign::Plus, m))
    }

    /// Representative as a rational with denominator a power of p.
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let u = BigInt::from_biguint(Sign::Plus, self.unit.clone());
        let pk = BigInt::from_biguint(Sign::Plus, pow_p(self.prime, self.valuation.unsigned_abs()).as_ref().clone());
        if self.valuation >= 0 {
            BigRational::from_integer(u * pk)
        } else {
            BigRational::new(u, pk)
        }
    }

    /// Signed representative in (-p^N/2, p^N/2] of an integral value; handy
    /// for recognising small integers.
    pub fn to_balanced_bigint(&self) -> Option<BigInt> {
        let n = self.to_bigint()?;
        if self.abs_prec == EXACT {
            return Some(n);
        }
        let m = BigInt::from_biguint(Sign::Plus, pow_p(self.prime, self.abs_prec.max(0) as u32).as_ref().clone());
        if &n * 2 > m {
            Some(n - m)
        } else {
            Some(n)
        }
    }

    /// Teichmüller representative of a unit.
    pub fn teichmuller(&self) -> Result<Self, PadicError> {
        if !self.is_unit() {
            return Err(PadicError::NonUnit);
        }
        let mut y = self.clone();
        for _ in 0..=self.abs_prec {
            let next = y.pow(self.prime as i64)?;
            if next == y {
                break;
            }
            y = next;
        }
        Ok(y)
    }

    /// Logarithm with the Iwasawa branch (log p = 0).
    pub fn log(&self) -> Result<Self, PadicError> {
        if self.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let p = self.prime;
        let rel = self.relative_precision();
        let u = PadicNumber { prime: p, valuation: 0, unit: self.unit.clone(), abs_prec: rel };
        let principal = u.residue() == Some(1);
        let z = if principal { u } else { u.pow(p as i64 - 1)? };
        let l = log_one_plus(&z.sub_impl_one(), rel);
        Ok(if principal { l } else { l.div_int(p as i64 - 1) })
    }

    fn sub_impl_one(&self) -> Self {
        self.add_impl(&Self::from_i64(self.prime, -1, self.abs_prec))
    }

    /// Exponential; requires valuation at least 1.
    pub fn exp(&self) -> Result<Self, PadicError> {
        let p = self.prime;
        if self.is_exact_zero() {
            return Ok(Self::one(p, EXACT / 2));
        }
        if self.valuation < 1 {
            return Err(PadicError::OutsideDomain("exp needs valuation >= 1"));
        }
        let prec = self.abs_prec;
        let v = self.valuation as i64;
        let mut sum = Self::one(p, prec);
        let mut term = Self::one(p, prec);
        let mut k: i64 = 1;
        loop {
            // v(x^k / k!) >= k v - (k-1)/(p-1)
            let bound = k * v - (k - 1) / (p as i64 - 1);
            if bound >= prec as i64 {
                break;
            }
            term = term.mul_impl(self).div_int(k);
            sum = sum.add_impl(&term);
            k += 1;
        }
        Ok(sum.with_precision(prec))
    }

    /// Square root with the smallest residue in [0, p); `None` if not a square.
    pub fn sqrt(&self) -> Option<Self> {
        self.sqrt_with_residue(None)
    }

    /// Square root whose unit part reduces to `residue` (if given).
    pub fn sqrt_with_residue(&self, residue: Option<u32>) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero(self.prime, self.abs_prec.div_euclid(2)));
        }
        if self.valuation % 2 != 0 {
            return None;
        }
        let p = self.prime;
        let rel = self.relative_precision();
        let a = (&self.unit % p).to_u64().unwrap();
        let r0 = match residue {
            Some(r) => {
                if (r as u64 * r as u64) % p as u64 != a {
                    return None;
                }
                r as u64
            }
            None => (1..p as u64).find(|r| r * r % p as u64 == a)?,
        };
        let u = PadicNumber { prime: p, valuation: 0, unit: self.unit.clone(), abs_prec: rel };
        let mut y = Self::from_i64(p, r0 as i64, rel);
        let mut good = 1;
        while good < rel {
            // Newton: y <- (y + u/y)/2
            let q = u.div_impl(&y).ok()?;
            y = y.add_impl(&q).div_int(2);
            good *= 2;
        }
        let y = y.with_precision(rel);
        Some(y.shift(self.valuation / 2))
    }

    /// Checked arithmetic: errors when the result carries no significant digit.
    pub fn arith(a: &Self, b: &Self, op: ArithOp) -> Result<Self, PadicError> {
        if a.prime != b.prime {
            return Err(PadicError::PrimeMismatch(a.prime, b.prime));
        }
        let r = match op {
            ArithOp::Add => a.add_impl(b),
            ArithOp::Sub => a.add_impl(&b.neg_impl()),
            ArithOp::Mul => a.mul_impl(b),
            ArithOp::Div => a.div_impl(b)?,
        };
        if r.is_zero() && !r.is_exact_zero() {
            return Err(PadicError::PrecisionExhausted(r.abs_prec));
        }
        Ok(r)
    }
}

/// log(1 + w) for v(w) >= 1 by the series, cut off by the tail bound
/// k v(w) - floor(log_p k) >= target.
fn log_one_plus(w: &PadicNumber, target: i32) -> PadicNumber {
    let p = w.prime;
    if w.is_zero() {
        return PadicNumber::zero(p, w.abs_prec.min(target));
    }
    let v = w.valuation as i64;
    debug_assert!(v >= 1);
    let mut sum = PadicNumber::exact_zero(p);
    let mut power = w.clone();
    let mut k: i64 = 1;
    loop {
        if k * v - ilog(p, k as u64) as i64 >= target as i64 {
            break;
        }
        let term = power.div_int(if k % 2 == 1 { k } else { -k });
        sum = sum.add_impl(&term);
        power = power.mul_impl(w);
        k += 1;
    }
    sum.with_precision(target.min(w.abs_prec))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        if self.is_exact_zero() {
            return write!(f, "0");
        }
        if self.is_zero() {
            return write!(f, "O({}^{})", p, self.abs_prec);
        }
        if self.valuation == 0 {
            write!(f, "{} + O({}^{})", self.unit, p, self.abs_prec)
        } else {
            write!(f, "{}*{}^{} + O({}^{})", self.unit, p, self.valuation, p, self.abs_prec)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b PadicNumber> for &'a PadicNumber {
            type Output = PadicNumber;
            fn $m(self, o: &'b PadicNumber) -> PadicNumber {
                let f: fn(&PadicNumber, &PadicNumber) -> PadicNumber = $body;
                f(self, o)
            }
        }
        impl $tr<PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $m(self, o: PadicNumber) -> PadicNumber {
                (&self).$m(&o)
            }
        }
        impl<'b> $tr<&'b PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $m(self, o: &'b PadicNumber) -> PadicNumber {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<PadicNumber> for &'a PadicNumber {
            type Output = PadicNumber;
            fn $m(self, o: PadicNumber) -> PadicNumber {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b));
binop!(Sub, sub, |a, b| a.add_impl(&b.neg_impl()));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a.div_impl(b).expect("p-adic division by zero"));

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        self.neg_impl()
    }
}

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        self.neg_impl()
    }
}

impl FieldElement for PadicNumber {
    fn zero_like(&self) -> Self {
        Self::exact_zero(self.prime)
    }
    fn one_like(&self) -> Self {
        assert!(!self.is_exact_zero(), "an exact zero carries no working precision");
        Self::one(self.prime, self.abs_prec)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_i64(self.prime, n, self.abs_prec)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::from_bigint(self.prime, n, self.abs_prec)
    }
    fn from_rational_like(&self, q: &BigRational) -> Option<Self> {
        Some(Self::from_rational(self.prime, q, self.abs_prec))
    }
    fn fis_zero(&self) -> bool {
        self.unit.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        self.add_impl(o)
    }
    fn fsub(&self, o: &Self) -> Self {
        self.add_impl(&o.neg_impl())
    }
    fn fmul(&self, o: &Self) -> Self {
        self.mul_impl(o)
    }
    fn fneg(&self) -> Self {
        self.neg_impl()
    }
    fn fdiv(&self, o: &Self) -> Option<Self> {
        self.div_impl(o).ok()
    }
    fn fmul_int(&self, n: i64) -> Self {
        self.mul_int(n)
    }
    fn fdiv_int(&self, n: i64) -> Option<Self> {
        if n == 0 {
            None
        } else {
            Some(self.div_int(n))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PadicRepr {
    p: u32,
    v: Option<i32>,
    u: String,
    n: Option<i32>,
}

impl Serialize for PadicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let exact = self.is_exact_zero();
        PadicRepr {
            p: self.prime,
            v: if exact { None } else { Some(self.valuation) },
            u: self.unit.to_str_radix(10),
            n: if exact { None } else { Some(self.abs_prec) },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = PadicRepr::deserialize(d)?;
        if r.p < 3 || r.p % 2 == 0 {
            return Err(D::Error::custom("prime must be odd"));
        }
        if r.u.is_empty() || r.u.len() > 20_000 || !r.u.bytes().all(|b| b.is_ascii_digit()) {
            return Err(D::Error::custom("mantissa must be a base-10 digit string"));
        }
        let unit = BigUint::parse_bytes(r.u.as_bytes(), 10).ok_or_else(|| D::Error::custom("bad mantissa"))?;
        PadicNumber::from_parts(r.p, r.v.unwrap_or(EXACT), unit, r.n.unwrap_or(EXACT)).map_err(D::Error::custom)
    }
}
