//! The level-2 free nilpotent Lie algebra on A, B with C = [A, B], and its
//! group law through the Campbell–Hausdorff formula.

use crate::error::NilpotentError;
use crate::scalar::Scalar;

/// aA + bB + cC.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentElement<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

/// Symplectic bracket of two L1 vectors: x_A y_B − x_B y_A.
pub fn bracket<S: Scalar>(x: &[S; 2], y: &[S; 2]) -> S {
    x[0].mul(&y[1]).sub(&x[1].mul(&y[0]))
}

impl<S: Scalar> NilpotentElement<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        NilpotentElement { a, b, c }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero())
    }

    pub fn gen_a() -> Self {
        Self::new(S::one(), S::zero(), S::zero())
    }

    pub fn gen_b() -> Self {
        Self::new(S::zero(), S::one(), S::zero())
    }

    pub fn gen_c() -> Self {
        Self::new(S::zero(), S::zero(), S::one())
    }

    pub fn from_l1(x: &[S; 2]) -> Self {
        Self::new(x[0].clone(), x[1].clone(), S::zero())
    }

    pub fn central(c: S) -> Self {
        Self::new(S::zero(), S::zero(), c)
    }

    pub fn l1(&self) -> [S; 2] {
        [self.a.clone(), self.b.clone()]
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.a.add(&o.a), self.b.add(&o.b), self.c.add(&o.c))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.a.sub(&o.a), self.b.sub(&o.b), self.c.sub(&o.c))
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.a.mul(k), self.b.mul(k), self.c.mul(k))
    }

    /// Lie bracket; lands in the centre.
    pub fn lie(&self, o: &Self) -> Self {
        Self::central(bracket(&self.l1(), &o.l1()))
    }

    /// Group inverse −l1 − l2.
    pub fn inverse(&self) -> Self {
        Self::new(self.a.neg(), self.b.neg(), self.c.neg())
    }

    /// Involution: −1 on L1, identity on the centre.
    pub fn involution(&self) -> Self {
        Self::new(self.a.neg(), self.b.neg(), self.c.clone())
    }

    pub fn is_central(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// u * v = u + v + ½[u, v].
pub fn bch_mul<S: Scalar>(u: &NilpotentElement<S>, v: &NilpotentElement<S>) -> Result<NilpotentElement<S>, NilpotentError> {
    let half = S::half().ok_or(NilpotentError::CharacteristicTwo)?;
    Ok(u.add(v).add(&u.lie(v).scale(&half)))
}

/// m(λ)l = λl1 + λ²l2.
pub fn m_lambda<S: Scalar>(lambda: &S, u: &NilpotentElement<S>) -> NilpotentElement<S> {
    NilpotentElement::new(u.a.mul(lambda), u.b.mul(lambda), u.c.mul(&lambda.mul(lambda)))
}

/// s(x) = ½(x' − I(x')) for a lift x' of x ∈ L1.
pub fn involution_and_splitting<S: Scalar>(
    x: &[S; 2],
    lift: &NilpotentElement<S>,
) -> Result<NilpotentElement<S>, NilpotentError> {
    if lift.l1() != *x {
        return Err(NilpotentError::LiftMismatch);
    }
    let half = S::half().ok_or(NilpotentError::CharacteristicTwo)?;
    Ok(lift.sub(&lift.involution()).scale(&half))
}
