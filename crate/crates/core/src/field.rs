//! Scalar trait shared by series, polynomials and the curve group law.
//!
//! Implemented for [`PadicNumber`](crate::padic::PadicNumber), exact rationals
//! and small prime fields. Method names carry an `f` prefix so they never
//! collide with the `std::ops` impls on the concrete types.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait FieldElement: Clone + Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn from_bigint_like(&self, n: &BigInt) -> Self;
    fn fis_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    /// `None` when `o` is zero (or indistinguishable from zero).
    fn fdiv(&self, o: &Self) -> Option<Self>;

    fn from_rational_like(&self, q: &BigRational) -> Option<Self> {
        self.from_bigint_like(q.numer())
            .fdiv(&self.from_bigint_like(q.denom()))
    }
    fn fmul_int(&self, n: i64) -> Self {
        self.fmul(&self.from_i64_like(n))
    }
    fn fdiv_int(&self, n: i64) -> Option<Self> {
        self.fdiv(&self.from_i64_like(n))
    }
    fn fpow(&self, mut e: u64) -> Self {
        if e == 0 {
            return self.one_like();
        }
        // Start from the first factor rather than one: an inexact one would
        // cap the precision of the result.
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.fmul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.fmul(&base);
            }
        }
        acc.expect("e > 0")
    }
}

impl FieldElement for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn fdiv(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
    fn from_rational_like(&self, q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

/// Element of the prime field F_p, p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u64,
    pub modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        Some(self.fpow(self.modulus - 2))
    }

    /// Square roots by exhaustive search; only used for small fields.
    pub fn sqrt_all(&self) -> Vec<Fp> {
        (0..self.modulus)
            .map(|v| Fp { value: v, modulus: self.modulus })
            .filter(|r| r.fmul(r) == *self)
            .collect()
    }
}

impl FieldElement for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1 % self.modulus, modulus: self.modulus }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fp::new(n, self.modulus)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        let m = BigInt::from(self.modulus);
        let r = ((n % &m) + &m) % &m;
        Fp { value: r.abs().to_u64().unwrap_or(0), modulus: self.modulus }
    }
    fn fis_zero(&self) -> bool {
        self.value == 0
    }
    fn fadd(&self, o: &Self) -> Self {
        Fp { value: (self.value + o.value) % self.modulus, modulus: self.modulus }
    }
    fn fsub(&self, o: &Self) -> Self {
        Fp {
            value: (self.value + self.modulus - o.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn fmul(&self, o: &Self) -> Self {
        Fp { value: self.value * o.value % self.modulus, modulus: self.modulus }
    }
    fn fneg(&self) -> Self {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
    fn fdiv(&self, o: &Self) -> Option<Self> {
        o.inverse().map(|i| self.fmul(&i))
    }
}
