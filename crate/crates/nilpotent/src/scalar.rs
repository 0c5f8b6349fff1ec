//! Exact coefficient fields: Q and prime fields F_q.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// 0 for Q.
    fn characteristic() -> u64;
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;
    fn name() -> String;

    fn half() -> Option<Self> {
        Self::from_i64(2).inv()
    }
}

pub type Q = BigRational;

fn small(q: &BigRational) -> Option<(i128, i128)> {
    Some((q.numer().to_i64()? as i128, q.denom().to_i64()? as i128))
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// n/d from i128 parts (d > 0), reduced without big-integer gcd.
fn from_parts(n: i128, d: i128) -> BigRational {
    let g = gcd(n, d).max(1);
    BigRational::new_raw(BigInt::from(n / g), BigInt::from(d / g))
}

/// Word-sized operands are combined in i128; anything larger goes through
/// the generic big-rational path.
fn fast(a: &BigRational, b: &BigRational, f: impl Fn(i128, i128, i128, i128) -> (i128, i128)) -> Option<BigRational> {
    let (an, ad) = small(a)?;
    let (bn, bd) = small(b)?;
    let (n, d) = f(an, ad, bn, bd);
    Some(from_parts(n, d))
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, o: &Self) -> Self {
        fast(self, o, |an, ad, bn, bd| (an * bd + bn * ad, ad * bd)).unwrap_or_else(|| self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        fast(self, o, |an, ad, bn, bd| (an * bd - bn * ad, ad * bd)).unwrap_or_else(|| self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        fast(self, o, |an, ad, bn, bd| (an * bn, ad * bd)).unwrap_or_else(|| self * o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn characteristic() -> u64 {
        0
    }
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let n: i64 = rng.gen_range(-20..=20);
        let d: i64 = rng.gen_range(1..=9);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
    fn name() -> String {
        "Q".into()
    }
}

/// Z/QZ for a prime Q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp<const P: u64>(u64);

pub type F101 = Fp<101>;

impl<const P: u64> Fp<P> {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut acc = 1u64;
        let mut b = self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(n: i64) -> Self {
        Self::new(n)
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn characteristic() -> u64 {
        P
    }
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
    fn name() -> String {
        format!("F_{P}")
    }
}
