//! The cubic étale algebra Q_p[T]/(f(T)) attached to the short model; used
//! for logarithms of x − T over the (possibly non-rational) roots of f.

use crate::padic::PadicNumber;
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct CubicAlgebra {
    /// f = T³ + c2T² + c1T + c0, stored as [c0, c1, c2].
    c: [PadicNumber; 3],
    p: u32,
    prec: i32,
}

pub type Elt = [PadicNumber; 3];

impl CubicAlgebra {
    pub fn new(f: &Poly<PadicNumber>) -> Self {
        assert_eq!(f.len(), 4, "monic cubic expected");
        let one = f.proto().clone();
        CubicAlgebra { c: [f.coeff(0), f.coeff(1), f.coeff(2)], p: one.prime(), prec: one.precision() }
    }

    pub fn zero(&self) -> Elt {
        [0, 1, 2].map(|_| PadicNumber::exact_zero(self.p))
    }

    pub fn scalar(&self, a: &PadicNumber) -> Elt {
        [a.clone(), PadicNumber::exact_zero(self.p), PadicNumber::exact_zero(self.p)]
    }

    /// The class of T.
    pub fn t(&self) -> Elt {
        let z = PadicNumber::exact_zero(self.p);
        [z.clone(), PadicNumber::one(self.p, self.prec), z]
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
    }

    pub fn scale(&self, a: &Elt, k: &PadicNumber) -> Elt {
        [&a[0] * k, &a[1] * k, &a[2] * k]
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let mut w: Vec<PadicNumber> = vec![PadicNumber::exact_zero(self.p); 5];
        for i in 0..3 {
            for j in 0..3 {
                w[i + j] = &w[i + j] + &(&a[i] * &b[j]);
            }
        }
        for k in (3..5).rev() {
            let lead = w[k].clone();
            for i in 0..3 {
                w[k - 3 + i] = &w[k - 3 + i] - &(&lead * &self.c[i]);
            }
        }
        [w[0].clone(), w[1].clone(), w[2].clone()]
    }

    pub fn pow(&self, a: &Elt, mut e: u64) -> Elt {
        let mut acc = self.scalar(&PadicNumber::one(self.p, self.prec));
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Evaluate a polynomial at T.
    pub fn eval_poly(&self, g: &Poly<PadicNumber>) -> Elt {
        let t = self.t();
        g.coeffs().iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, &t), &self.scalar(c)))
    }

    /// Tr(a) = 3a0 + a1 Tr(T) + a2 Tr(T²).
    pub fn trace(&self, a: &Elt) -> PadicNumber {
        let tr1 = -&self.c[2];
        let tr2 = &(&self.c[2] * &self.c[2]) - &self.c[1].mul_int(2);
        &(&a[0].mul_int(3) + &(&a[1] * &tr1)) + &(&a[2] * &tr2)
    }

    /// Iwasawa logarithm of a unit: log(u^(p⁶−1)) / (p⁶−1).
    ///
    /// Every residue field of the algebra has degree dividing 6, so the
    /// power is ≡ 1 mod p.
    pub fn log_unit(&self, a: &Elt) -> Option<Elt> {
        let p = self.p as u64;
        let q = p.checked_pow(6)? - 1;
        let w = self.pow(a, q);
        let one = PadicNumber::one(self.p, self.prec);
        let z = self.sub(&w, &self.scalar(&one));
        let target = a.iter().map(|c| c.precision()).min().unwrap_or(self.prec);
        let vz = z.iter().filter(|c| !c.is_zero()).map(|c| c.valuation()).min();
        let Some(vz) = vz else { return Some(self.zero()) };
        if vz < 1 {
            return None;
        }
        let mut sum = self.zero();
        let mut power = z.clone();
        let mut k: i64 = 1;
        loop {
            if k * vz as i64 - crate::padic::ilog(self.p, k as u64) as i64 >= target as i64 {
                break;
            }
            let term = [0, 1, 2].map(|i| power[i].div_int(if k % 2 == 1 { k } else { -k }));
            sum = self.add(&sum, &term);
            power = self.mul(&power, &z);
            k += 1;
        }
        let qq = q as i64;
        Some([0, 1, 2].map(|i| sum[i].div_int(qq).with_precision(target)))
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
}
