//! Dense univariate polynomials over a [`FieldElement`].

use crate::field::FieldElement;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K> {
    coeffs: Vec<K>,
    proto: K,
}

impl<K: FieldElement> Poly<K> {
    pub fn new(proto: &K, coeffs: Vec<K>) -> Self {
        Poly { coeffs, proto: proto.one_like() }
    }

    pub fn zero(proto: &K) -> Self {
        Self::new(proto, Vec::new())
    }

    pub fn constant(c: K) -> Self {
        let proto = c.one_like();
        Self::new(&proto, vec![c])
    }

    pub fn monomial(c: K, k: usize) -> Self {
        let proto = c.one_like();
        let mut v = vec![proto.zero_like(); k];
        v.push(c);
        Self::new(&proto, v)
    }

    pub fn x(proto: &K) -> Self {
        Self::monomial(proto.one_like(), 1)
    }

    pub fn proto(&self) -> &K {
        &self.proto
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.proto.zero_like())
    }

    /// Degree ignoring trailing coefficients indistinguishable from zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.fis_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.proto, (0..n).map(|i| self.coeff(i).fadd(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.proto, (0..n).map(|i| self.coeff(i).fsub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.proto, self.coeffs.iter().map(|c| c.fneg()).collect())
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(&self.proto, self.coeffs.iter().map(|x| x.fmul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero(&self.proto);
        }
        let mut out = vec![self.proto.zero_like(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.fis_zero() && *a == a.zero_like() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].fadd(&a.fmul(b));
            }
        }
        Self::new(&self.proto, out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            &self.proto,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.fmul_int(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs.iter().rev().fold(self.proto.zero_like(), |acc, c| acc.fmul(x).fadd(c))
    }

    /// Evaluate at a series argument.
    pub fn eval_series(&self, s: &TruncatedSeries<K>) -> TruncatedSeries<K> {
        let mut acc = TruncatedSeries::zero(&self.proto, s.order());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(s).add_constant(c);
        }
        acc
    }

    /// Quotient and remainder by a monic polynomial.
    pub fn divrem_monic(&self, m: &Self) -> (Self, Self) {
        let dm = m.coeffs.len() - 1;
        debug_assert!(m.coeffs[dm].fsub(&self.proto).fis_zero());
        if self.coeffs.len() <= dm {
            return (Self::zero(&self.proto), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![self.proto.zero_like(); self.coeffs.len() - dm];
        for k in (dm..r.len()).rev() {
            let lead = r[k].clone();
            if lead.fis_zero() && lead == lead.zero_like() {
                continue;
            }
            q[k - dm] = lead.clone();
            for i in 0..=dm {
                r[k - dm + i] = r[k - dm + i].fsub(&lead.fmul(&m.coeffs[i]));
            }
        }
        r.truncate(dm);
        (Self::new(&self.proto, q), Self::new(&self.proto, r))
    }

    /// Quotient and remainder by any polynomial with invertible leading
    /// coefficient.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = d.coeffs[dd].clone();
        let monic = Self::new(&self.proto, d.coeffs[..=dd].iter().map(|c| c.fdiv(&lead)).collect::<Option<Vec<_>>>()?);
        let (q, r) = self.divrem_monic(&monic);
        Some((q.scale(&self.proto.fdiv(&lead)?), r))
    }

    pub fn trimmed(&self) -> Self {
        let n = self.degree().map_or(0, |d| d + 1);
        Self::new(&self.proto, self.coeffs[..n].to_vec())
    }

    /// (u, v) with u·a + v·b = 1 for coprime a, b over an exact field.
    pub fn bezout(a: &Self, b: &Self) -> Option<(Self, Self)> {
        let proto = a.proto.clone();
        let (mut r0, mut r1) = (a.trimmed(), b.trimmed());
        let (mut s0, mut s1) = (Self::constant(proto.one_like()), Self::zero(&proto));
        let (mut t0, mut t1) = (Self::zero(&proto), Self::constant(proto.one_like()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let r = r.trimmed();
            let s2 = s0.sub(&q.mul(&s1)).trimmed();
            let t2 = t0.sub(&q.mul(&t1)).trimmed();
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = proto.fdiv(&r0.coeffs[0])?;
        Some((s0.scale(&c).trimmed(), t0.scale(&c).trimmed()))
    }

    pub fn map<L: FieldElement>(&self, proto: &L, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::new(proto, self.coeffs.iter().map(f).collect())
    }
}
