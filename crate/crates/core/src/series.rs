//! Truncated Laurent series, log-augmented series and Strassman root isolation.

use std::fmt;

use crate::error::SeriesError;
use crate::field::FieldElement;
use crate::padic::{ilog, PadicNumber};

/// `Σ_{k >= start} c_k t^k + O(t^order)` with a finite principal part.
///
/// `proto` is a unit element (the number one at working precision) that
/// supplies the context for fresh coefficients.
#[derive(Clone)]
pub struct TruncatedSeries<K> {
    start: i32,
    coeffs: Vec<K>,
    order: i32,
    proto: K,
    var: &'static str,
}

impl<K: FieldElement> TruncatedSeries<K> {
    pub fn new(proto: &K, start: i32, mut coeffs: Vec<K>, order: i32) -> Self {
        let keep = (order - start).max(0) as usize;
        coeffs.truncate(keep);
        TruncatedSeries { start: start.min(order), coeffs, order, proto: proto.one_like(), var: "t" }
    }

    pub fn zero(proto: &K, order: i32) -> Self {
        Self::new(proto, order, Vec::new(), order)
    }

    pub fn constant(c: K, order: i32) -> Self {
        let proto = c.one_like();
        Self::new(&proto, 0, vec![c], order)
    }

    pub fn one(proto: &K, order: i32) -> Self {
        Self::constant(proto.one_like(), order)
    }

    pub fn monomial(c: K, k: i32, order: i32) -> Self {
        let proto = c.one_like();
        Self::new(&proto, k, vec![c], order)
    }

    /// The parameter itself.
    pub fn variable(proto: &K, order: i32) -> Self {
        Self::monomial(proto.one_like(), 1, order)
    }

    pub fn with_var(mut self, var: &'static str) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn proto(&self) -> &K {
        &self.proto
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Index one past the last stored coefficient.
    pub fn end(&self) -> i32 {
        self.start + self.coeffs.len() as i32
    }

    pub fn coeff(&self, k: i32) -> K {
        if k < self.start || k >= self.end() {
            return self.proto.zero_like();
        }
        self.coeffs[(k - self.start) as usize].clone()
    }

    pub fn coeff_ref(&self, k: i32) -> Option<&K> {
        if k < self.start || k >= self.end() {
            None
        } else {
            Some(&self.coeffs[(k - self.start) as usize])
        }
    }

    /// Iterate `(exponent, coefficient)` over stored entries.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &K)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.start + i as i32, c))
    }

    /// Lowest exponent with a coefficient distinguishable from zero.
    pub fn valuation(&self) -> Option<i32> {
        self.iter().find(|(_, c)| !c.fis_zero()).map(|(k, _)| k)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: i32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let mut s = Self::new(&self.proto, self.start, self.coeffs.clone(), order);
        s.var = self.var;
        s
    }

    fn from_fn(&self, start: i32, order: i32, f: impl Fn(i32) -> K) -> Self {
        let coeffs = (start..order).map(f).collect();
        let mut s = Self::new(&self.proto, start, coeffs, order);
        s.var = self.var;
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let start = self.start.min(o.start);
        let end = self.end().max(o.end()).min(order);
        self.from_fn(start, end.max(start), |k| match (self.coeff_ref(k), o.coeff_ref(k)) {
            (Some(a), Some(b)) => a.fadd(b),
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => self.proto.zero_like(),
        })
        .with_order(order)
    }

    fn with_order(mut self, order: i32) -> Self {
        self.order = order;
        self.start = self.start.min(order);
        self
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.iter_mut() {
            *c = c.fneg();
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut s = self.clone();
        for x in s.coeffs.iter_mut() {
            *x = x.fmul(c);
        }
        s
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let mut s = self.clone();
        for x in s.coeffs.iter_mut() {
            *x = x.fmul_int(n);
        }
        s
    }

    pub fn add_constant(&self, c: &K) -> Self {
        self.add(&Self::new(&self.proto, 0, vec![c.clone()], self.order))
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i32) -> Self {
        let mut s = self.clone();
        s.start += k;
        s.order += k;
        s
    }

    /// Product; the truncation order is `min(order_f + val_g, order_g + val_f)`.
    pub fn mul(&self, o: &Self) -> Self {
        self.mul_trunc(o, i32::MAX)
    }

    /// Product truncated additionally at `cap`.
    pub fn mul_trunc(&self, o: &Self, cap: i32) -> Self {
        let vf = self.valuation().unwrap_or(self.order);
        let vg = o.valuation().unwrap_or(o.order);
        let order = (self.order as i64 + vg as i64)
            .min(o.order as i64 + vf as i64)
            .min(cap as i64) as i32;
        let start = self.start + o.start;
        if order <= start {
            return Self::zero(&self.proto, order).with_var(self.var);
        }
        let n = (order - start) as usize;
        let mut out: Vec<Option<K>> = vec![None; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.fis_zero() && a == &a.zero_like() {
                continue;
            }
            if i >= n {
                break;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let idx = i + j;
                if idx >= n {
                    break;
                }
                let prod = a.fmul(b);
                out[idx] = Some(match out[idx].take() {
                    None => prod,
                    Some(acc) => acc.fadd(&prod),
                });
            }
        }
        let coeffs = out.into_iter().map(|c| c.unwrap_or_else(|| self.proto.zero_like())).collect();
        let mut s = Self::new(&self.proto, start, coeffs, order);
        s.var = self.var;
        s
    }

    pub fn derivative(&self) -> Self {
        let start = self.start - 1;
        self.from_fn(start, self.end() - 1, |k| self.coeff(k + 1).fmul_int((k + 1) as i64))
            .with_order(self.order - 1)
    }

    /// Formal primitive with zero constant term; the t^{-1} term becomes a log.
    pub fn integrate(&self) -> LogSeries<K> {
        let residue = self.coeff(-1);
        let start = self.start + 1;
        let poly = self.from_fn(start, self.end() + 1, |k| {
            if k == 0 {
                self.proto.zero_like()
            } else {
                self.coeff(k - 1).fdiv_int(k as i64).expect("nonzero integer")
            }
        })
        .with_order(self.order + 1);
        let mut parts = vec![poly];
        if !residue.fis_zero() {
            parts.push(Self::new(&self.proto, 0, vec![residue], self.order + 1).with_var(self.var));
        }
        LogSeries { parts }
    }

    /// Primitive when the residue is known to vanish (checked).
    pub fn integrate_no_log(&self) -> Result<Self, SeriesError> {
        let l = self.integrate();
        if l.parts.len() > 1 {
            return Err(SeriesError::NotInvertible);
        }
        Ok(l.parts.into_iter().next().unwrap())
    }

    /// Multiplicative inverse of a series with invertible leading coefficient.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::NotInvertible)?;
        let len = self.order - v;
        if len <= 0 {
            return Err(SeriesError::TruncationCollapse { order: self.order, lowest: v });
        }
        let c0 = self.coeff(v);
        let inv0 = self.proto.fdiv(&c0).ok_or(SeriesError::NotInvertible)?;
        let a: Vec<K> = (0..len).map(|i| self.coeff(v + i)).collect();
        let mut b: Vec<K> = Vec::with_capacity(len as usize);
        b.push(inv0.clone());
        for n in 1..len as usize {
            let mut acc = self.proto.zero_like();
            for i in 1..=n {
                if a[i].fis_zero() && a[i] == a[i].zero_like() {
                    continue;
                }
                acc = acc.fadd(&a[i].fmul(&b[n - i]));
            }
            b.push(acc.fmul(&inv0).fneg());
        }
        let mut s = Self::new(&self.proto, -v, b, len - v);
        s.var = self.var;
        Ok(s)
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&o.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut acc = Self::one(&self.proto, i32::MAX / 4).with_var(self.var);
        let mut base = self.clone();
        let mut k = e as u64;
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                acc = if first { base.clone() } else { acc.mul(&base) };
                first = false;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        if first {
            return Ok(Self::one(&self.proto, self.order.max(0) + 1).with_var(self.var));
        }
        Ok(acc)
    }

    /// `self(inner(t))` for `inner` of positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        let e = inner.valuation().ok_or(SeriesError::BadComposition)?;
        if e < 1 {
            return Err(SeriesError::BadComposition);
        }
        let rel = inner.order - e;
        let low = self.valuation().unwrap_or(self.order);
        let order = (e as i64 * self.order as i64).min(e as i64 * low as i64 + rel as i64) as i32;
        let mut result = Self::zero(&self.proto, order).with_var(inner.var);
        // Non-negative part by Horner.
        let top = ((order + e - 1) / e).min(self.end());
        if top > 0 {
            let mut acc = Self::new(&self.proto, 0, vec![self.coeff(top - 1)], order);
            for k in (0..top - 1).rev() {
                acc = acc.mul_trunc(inner, order).add_constant(&self.coeff(k));
            }
            result = result.add(&acc.truncate(order));
        }
        if low < 0 {
            let inv = inner.inverse()?;
            let mut power = Self::one(&self.proto, order);
            for k in 1..=(-low) {
                power = power.mul_trunc(&inv, order + e * (-low));
                let c = self.coeff(-k);
                if !c.fis_zero() {
                    result = result.add(&power.scale(&c));
                }
            }
            result = result.truncate(order);
        }
        Ok(result.with_var(inner.var))
    }

    /// Square root of a series `1 + O(t)` by Newton iteration.
    pub fn sqrt_one_plus(&self) -> Result<Self, SeriesError> {
        if self.start < 0 || self.valuation() != Some(0) || !self.coeff(0).fsub(&self.proto).fis_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let order = self.order;
        let mut y = Self::one(&self.proto, order);
        let mut good = 1;
        loop {
            let q = self.mul(&y.inverse()?);
            y = y.add(&q).scale(&self.proto.fdiv_int(2).unwrap());
            y = y.truncate(order);
            if good >= order {
                break;
            }
            good *= 2;
        }
        Ok(y.with_var(self.var))
    }

    /// log of a series `1 + O(t)` via the primitive of f'/f.
    pub fn log_one_plus(&self) -> Result<Self, SeriesError> {
        let q = self.derivative().mul(&self.inverse()?);
        q.integrate_no_log()
    }

    /// Evaluate at a point (negative powers via the inverse).
    pub fn eval(&self, x: &K) -> Option<K> {
        let mut acc = self.proto.zero_like();
        let lo = self.start.max(0);
        for k in (lo..self.end()).rev() {
            acc = acc.fmul(x).fadd(&self.coeff(k));
        }
        if lo > 0 {
            acc = acc.fmul(&x.fpow(lo as u64));
        }
        if self.start < 0 {
            let inv = self.proto.fdiv(x)?;
            let mut p = self.proto.clone();
            for k in 1..=(-self.start) {
                p = p.fmul(&inv);
                acc = acc.fadd(&self.coeff(-k).fmul(&p));
            }
        }
        Some(acc)
    }

    pub fn map(&self, f: impl Fn(&K) -> K) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.iter_mut() {
            *c = f(c);
        }
        s
    }
}

impl<K: FieldElement> PartialEq for TruncatedSeries<K> {
    fn eq(&self, o: &Self) -> bool {
        let lo = self.start.min(o.start);
        let hi = self.end().max(o.end());
        self.order == o.order && (lo..hi).all(|k| self.coeff(k) == o.coeff(k))
    }
}

impl<K: FieldElement + fmt::Display> fmt::Display for TruncatedSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.iter() {
            if c.fis_zero() {
                continue;
            }
            write!(f, "({}) {}^{} + ", c, self.var, k)?;
        }
        write!(f, "O({}^{})", self.var, self.order)
    }
}

impl<K: FieldElement> fmt::Debug for TruncatedSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("start", &self.start)
            .field("order", &self.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

/// `Σ_k f_k(t) (log t)^k`.
#[derive(Clone)]
pub struct LogSeries<K> {
    parts: Vec<TruncatedSeries<K>>,
}

impl<K: FieldElement> fmt::Debug for LogSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.parts.iter()).finish()
    }
}

impl<K: FieldElement> LogSeries<K> {
    pub fn from_series(f: TruncatedSeries<K>) -> Self {
        LogSeries { parts: vec![f] }
    }

    pub fn from_parts(parts: Vec<TruncatedSeries<K>>) -> Self {
        assert!(!parts.is_empty(), "the log^0 part is always present");
        LogSeries { parts }
    }

    pub fn parts(&self) -> &[TruncatedSeries<K>] {
        &self.parts
    }

    /// Coefficient series of (log t)^k.
    pub fn part(&self, k: usize) -> Option<&TruncatedSeries<K>> {
        self.parts.get(k)
    }

    pub fn log_degree(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn power_part(&self) -> &TruncatedSeries<K> {
        &self.parts[0]
    }

    /// Drop trailing log parts that are identically zero.
    fn trim(mut self) -> Self {
        while self.parts.len() > 1 && self.parts.last().unwrap().is_zero() {
            self.parts.pop();
        }
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.parts.len().max(o.parts.len());
        let parts = (0..n)
            .map(|k| match (self.parts.get(k), o.parts.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            })
            .collect();
        LogSeries { parts }.trim()
    }

    pub fn neg(&self) -> Self {
        LogSeries { parts: self.parts.iter().map(|p| p.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        LogSeries { parts: self.parts.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn add_constant(&self, c: &K) -> Self {
        let mut s = self.clone();
        s.parts[0] = s.parts[0].add_constant(c);
        s
    }

    /// (log t)^j (log t)^k = (log t)^(j+k).
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.parts.len() + o.parts.len() - 1;
        let mut parts: Vec<Option<TruncatedSeries<K>>> = vec![None; n];
        for (j, a) in self.parts.iter().enumerate() {
            for (k, b) in o.parts.iter().enumerate() {
                let prod = a.mul(b);
                parts[j + k] = Some(match parts[j + k].take() {
                    None => prod,
                    Some(acc) => acc.add(&prod),
                });
            }
        }
        LogSeries { parts: parts.into_iter().map(|p| p.unwrap()).collect() }.trim()
    }

    pub fn mul_series(&self, f: &TruncatedSeries<K>) -> Self {
        LogSeries { parts: self.parts.iter().map(|p| p.mul(f)).collect() }
    }

    /// d/dt, returned as a log series (log parts lose one degree).
    pub fn derivative(&self) -> Self {
        let mut out = LogSeries::from_series(self.parts[0].derivative());
        for (k, p) in self.parts.iter().enumerate().skip(1) {
            let a = LogSeries::from_parts(
                std::iter::repeat_with(|| TruncatedSeries::zero(p.proto(), p.order()))
                    .take(k)
                    .chain(std::iter::once(p.derivative()))
                    .collect(),
            );
            let b_series = p.shift(-1).scale_int(k as i64);
            let b_order = b_series.order();
            let b = LogSeries::from_parts(
                std::iter::repeat_with(|| TruncatedSeries::zero(p.proto(), b_order))
                    .take(k - 1)
                    .chain(std::iter::once(b_series))
                    .collect(),
            );
            out = out.add(&a).add(&b);
        }
        out
    }

    pub fn truncate(&self, order: i32) -> Self {
        LogSeries { parts: self.parts.iter().map(|p| p.truncate(order)).collect() }
    }

    /// Evaluate given a value for log t.
    pub fn eval_with_log(&self, x: &K, log_x: &K) -> Option<K> {
        let mut acc = x.zero_like();
        let mut lp = x.one_like();
        for p in &self.parts {
            acc = acc.fadd(&p.eval(x)?.fmul(&lp));
            lp = lp.fmul(log_x);
        }
        Some(acc)
    }
}

/// Padic-specific helpers.
impl TruncatedSeries<PadicNumber> {
    pub fn prime(&self) -> u32 {
        self.proto.prime()
    }

    /// Smallest valuation among stored coefficients (`None` if all zero).
    pub fn min_valuation(&self) -> Option<i32> {
        self.iter().filter(|(_, c)| !c.is_zero()).map(|(_, c)| c.valuation()).min()
    }

    /// Smallest precision among stored coefficients.
    pub fn min_precision(&self) -> i32 {
        self.iter().map(|(_, c)| c.precision()).min().unwrap_or(i32::MAX)
    }

    /// Evaluate a power series at `x` with v(x) >= 1, capping the result by
    /// a tail bound: every omitted term c_k x^k (k >= order) is assumed to
    /// satisfy v(c_k) >= `coeff_floor` - `log_weight` * floor(log_p k).
    pub fn eval_with_tail(&self, x: &PadicNumber, coeff_floor: i32, log_weight: i32) -> PadicNumber {
        let p = self.prime();
        let vx = if x.is_zero() { x.precision().min(1_000_000) } else { x.valuation() };
        assert!(self.start >= 0, "tail evaluation needs a power series");
        let mut acc = PadicNumber::exact_zero(p);
        for k in (self.start..self.end()).rev() {
            acc = &(&acc * x) + &self.coeff(k);
        }
        if self.start > 0 {
            acc = &acc * &x.pow(self.start as i64).unwrap();
        }
        let n = self.order.max(1) as i64;
        let tail = if vx <= 0 {
            i32::MIN / 4
        } else {
            // k vx - w log_p k is nondecreasing for vx >= w.
            (n * vx as i64 + coeff_floor as i64 - log_weight as i64 * ilog(p, n as u64) as i64).min(i32::MAX as i64 / 4) as i32
        };
        acc.with_precision(tail)
    }

    /// Rescale the variable: f(c t).
    pub fn rescale(&self, c: &PadicNumber) -> Self {
        let mut s = self.clone();
        let mut pw = c.pow(self.start as i64).unwrap();
        for x in s.coeffs.iter_mut() {
            *x = &*x * &pw;
            pw = &pw * c;
        }
        s
    }

    /// f(a + t) as a series in t (power series input).
    pub fn taylor_shift(&self, a: &PadicNumber) -> Self {
        assert!(self.start >= 0);
        // Horner with the linear polynomial (a + t).
        let n = self.end();
        let mut acc: Vec<PadicNumber> = Vec::new();
        for k in (0..n).rev() {
            // acc <- acc * (a + t) + c_k
            let mut next = vec![PadicNumber::exact_zero(self.prime()); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i] = &next[i] + &(c * a);
                next[i + 1] = &next[i + 1] + c;
            }
            next[0] = &next[0] + &self.coeff(k);
            acc = next;
        }
        let order = self.order;
        let mut s = Self::new(&self.proto, 0, acc, order);
        s.var = self.var;
        s
    }
}

/// A root reported by [`strassman_roots`].
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: PadicNumber,
    pub multiplicity: usize,
    /// True when f and f' vanish together at the available precision.
    pub multiple: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootCertificate {
    /// Strassman bound: index of the last coefficient of minimal valuation.
    pub strassman_bound: usize,
    pub roots: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RootOutcome {
    Roots(RootCertificate),
    Inconclusive { reason: String },
}

/// Zeros in Z_p of a convergent power series over Z_p.
///
/// The input is a truncation whose omitted tail is below the precision of
/// the stored coefficients (the caller's responsibility).
pub fn strassman_roots(f: &TruncatedSeries<PadicNumber>) -> RootOutcome {
    if f.start() < 0 {
        return RootOutcome::Inconclusive { reason: "series has a principal part".into() };
    }
    let Some(m) = f.min_valuation() else {
        return RootOutcome::Inconclusive { reason: "all coefficients indistinguishable from zero".into() };
    };
    let bound = f.iter().filter(|(_, c)| !c.is_zero() && c.valuation() == m).map(|(k, _)| k).max().unwrap() as usize;
    let g = f.map(|c| c.shift(-m));
    let mut roots = Vec::new();
    let p = f.prime();
    let mut pending: Vec<(PadicNumber, TruncatedSeries<PadicNumber>, i32)> =
        vec![(PadicNumber::exact_zero(p), g.clone(), 0)];
    // Each entry: (offset, h, depth) with f(offset + p^depth u) ~ h(u), h of unit content.
    while let Some((offset, h, depth)) = pending.pop() {
        let residues: Vec<u32> = (0..h.end().max(0))
            .map(|k| h.coeff(k).residue().unwrap_or(0))
            .collect();
        let hbar = |a: u64| -> u64 {
            residues.iter().rev().fold(0u64, |acc, &c| (acc * a + c as u64) % p as u64)
        };
        let hbar_deriv = |a: u64| -> u64 {
            residues
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0u64, |acc, (k, &c)| (acc * a + (k as u64 % p as u64) * c as u64) % p as u64)
        };
        for a in 0..p as u64 {
            if hbar(a) != 0 {
                continue;
            }
            let digit = PadicNumber::from_i64(p, a as i64, f.min_precision()).shift(depth);
            let base = &offset + &digit;
            if hbar_deriv(a) != 0 {
                roots.push(Root { value: newton_refine(&g, base), multiplicity: 1, multiple: false });
                continue;
            }
            // Multiple residue root: zoom in.
            let shifted = h.taylor_shift(&PadicNumber::from_i64(p, a as i64, h.min_precision()));
            let scaled = shifted.rescale(&PadicNumber::from_i64(p, p as i64, h.min_precision() + 1));
            match scaled.min_valuation() {
                None => {
                    let mult = multiplicity_mod_p(&residues, a, p);
                    roots.push(Root { value: base, multiplicity: mult, multiple: true });
                }
                Some(mv) => {
                    let next = scaled.map(|c| c.shift(-mv));
                    let sub_bound = next
                        .iter()
                        .filter(|(_, c)| !c.is_zero() && c.valuation() == 0)
                        .map(|(k, _)| k)
                        .max()
                        .unwrap_or(0);
                    let rel_left = next.iter().filter(|(_, c)| !c.is_zero()).map(|(_, c)| c.relative_precision()).max().unwrap_or(0);
                    if sub_bound == 0 {
                        continue;
                    }
                    if rel_left <= 1 || depth > f.min_precision() {
                        roots.push(Root { value: base, multiplicity: sub_bound as usize, multiple: true });
                    } else {
                        pending.push((base, next, depth + 1));
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| a.value.to_rational().cmp(&b.value.to_rational()));
    RootOutcome::Roots(RootCertificate { strassman_bound: bound, roots })
}

fn multiplicity_mod_p(residues: &[u32], a: u64, p: u32) -> usize {
    // Repeated synthetic division by (u - a) over F_p.
    let mut c: Vec<u64> = residues.iter().map(|&x| x as u64).collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    let mut mult = 0;
    loop {
        if c.is_empty() {
            return mult.max(1);
        }
        let n = c.len();
        let mut q = vec![0u64; n.saturating_sub(1)];
        let mut carry = 0u64;
        for k in (0..n).rev() {
            let v = (c[k] + carry) % p as u64;
            if k == 0 {
                if v != 0 {
                    return mult.max(1);
                }
            } else {
                q[k - 1] = v;
                carry = v * a % p as u64;
            }
        }
        mult += 1;
        c = q;
    }
}

/// Newton iteration from a simple residue root to the precision of `f`.
///
/// Iterates at fixed absolute precision; the reported precision of the root
/// is `prec(f) - v(f'(root))`, the Hensel bound.
fn newton_refine(f: &TruncatedSeries<PadicNumber>, start: PadicNumber) -> PadicNumber {
    let df = f.derivative();
    let target = f.min_precision();
    let mut x = start.lift_to(target).with_precision(target);
    for _ in 0..64 {
        let fx = eval_plain(f, &x);
        let dfx = eval_plain(&df, &x);
        let Ok(step) = fx.checked_div(&dfx) else { break };
        if step.is_zero() {
            break;
        }
        x = (&x - &step).lift_to(target).with_precision(target);
    }
    let dfx = eval_plain(&df, &x);
    if dfx.is_zero() {
        return x;
    }
    x.with_precision(target - dfx.valuation().max(0))
}

fn eval_plain(f: &TruncatedSeries<PadicNumber>, x: &PadicNumber) -> PadicNumber {
    let mut acc = PadicNumber::exact_zero(f.prime());
    for k in (0..f.end()).rev() {
        acc = &(&acc * x) + &f.coeff(k);
    }
    acc
}
