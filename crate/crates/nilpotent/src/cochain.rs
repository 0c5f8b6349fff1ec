//! Inhomogeneous cochains of a group model with values in L1, in the centre
//! Z, or in the scalars with trivial action.

use crate::element::{bracket, NilpotentElement};
use crate::error::NilpotentError;
use crate::group::GroupModel;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Module {
    /// span(A, B) with the matrix action.
    L1,
    /// The centre, acted on by det.
    Z,
    /// Scalars with trivial action.
    Trivial,
}

impl Module {
    pub fn dim(self) -> usize {
        match self {
            Module::L1 => 2,
            Module::Z | Module::Trivial => 1,
        }
    }
}

pub fn act<S: Scalar>(model: &GroupModel<S>, module: Module, g: usize, v: &[S]) -> Vec<S> {
    match module {
        Module::L1 => model.act_l1(g, &[v[0].clone(), v[1].clone()]).to_vec(),
        Module::Z => vec![model.act_z(g, &v[0])],
        Module::Trivial => v.to_vec(),
    }
}

/// Apply g to v and add sign·result into out.
fn act_accumulate<S: Scalar>(model: &GroupModel<S>, module: Module, g: usize, v: &[S], negate: bool, out: &mut [S]) {
    match module {
        Module::L1 => {
            let m = &model.matrices[g];
            for (i, o) in out.iter_mut().enumerate() {
                for j in 0..2 {
                    if m[i][j].is_zero() || v[j].is_zero() {
                        continue;
                    }
                    let x = m[i][j].mul(&v[j]);
                    *o = if negate { o.sub(&x) } else { o.add(&x) };
                }
            }
        }
        Module::Z => {
            let x = model.dets[g].mul(&v[0]);
            out[0] = if negate { out[0].sub(&x) } else { out[0].add(&x) };
        }
        Module::Trivial => accumulate(v, negate, out),
    }
}

fn accumulate<S: Scalar>(v: &[S], negate: bool, out: &mut [S]) {
    for (o, x) in out.iter_mut().zip(v) {
        *o = if negate { o.sub(x) } else { o.add(x) };
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<S> {
    pub module: Module,
    pub degree: usize,
    /// Values at (g1, …, gd), flattened: entry Σ g_i n^(d−1−i) occupies
    /// dim consecutive slots.
    pub values: Vec<S>,
}

impl<S: Scalar> Cochain<S> {
    pub fn zero(n: usize, module: Module, degree: usize) -> Self {
        Cochain { module, degree, values: vec![S::zero(); module.dim() * n.pow(degree as u32)] }
    }

    pub fn from_fn(n: usize, module: Module, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<S>) -> Self {
        let mut idx = vec![0usize; degree];
        let total = n.pow(degree as u32);
        let mut values = Vec::with_capacity(total * module.dim());
        for k in 0..total {
            let mut r = k;
            for i in (0..degree).rev() {
                idx[i] = r % n;
                r /= n;
            }
            let v = f(&idx);
            assert_eq!(v.len(), module.dim());
            values.extend(v);
        }
        Cochain { module, degree, values }
    }

    /// The character c as a scalar 1-cochain.
    pub fn character(model: &GroupModel<S>) -> Self {
        Cochain { module: Module::Trivial, degree: 1, values: model.character.clone() }
    }

    pub fn random<R: rand::Rng + ?Sized>(n: usize, module: Module, degree: usize, rng: &mut R) -> Self {
        let len = module.dim() * n.pow(degree as u32);
        Cochain { module, degree, values: (0..len).map(|_| S::random(rng)).collect() }
    }

    /// Number of table entries.
    pub fn len(&self) -> usize {
        self.values.len() / self.module.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn entry(&self, k: usize) -> &[S] {
        let d = self.module.dim();
        &self.values[k * d..(k + 1) * d]
    }

    pub fn at(&self, idx: &[usize], n: usize) -> &[S] {
        self.entry(idx.iter().fold(0, |acc, &g| acc * n + g))
    }

    pub fn at1(&self, g: usize) -> &[S] {
        self.entry(g)
    }

    pub fn at2(&self, g: usize, h: usize, n: usize) -> &[S] {
        self.entry(g * n + h)
    }

    fn same_shape(&self, o: &Self) -> Result<(), NilpotentError> {
        if self.module != o.module || self.degree != o.degree || self.values.len() != o.values.len() {
            return Err(NilpotentError::Shape(format!(
                "{:?}/{} vs {:?}/{}",
                self.module, self.degree, o.module, o.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, NilpotentError> {
        self.same_shape(o)?;
        Ok(self.with_values(self.values.iter().zip(&o.values).map(|(x, y)| x.add(y)).collect()))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, NilpotentError> {
        self.same_shape(o)?;
        Ok(self.with_values(self.values.iter().zip(&o.values).map(|(x, y)| x.sub(y)).collect()))
    }

    pub fn scale(&self, k: &S) -> Self {
        self.with_values(self.values.iter().map(|x| x.mul(k)).collect())
    }

    fn with_values(&self, values: Vec<S>) -> Self {
        Cochain { module: self.module, degree: self.degree, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }

    /// Number of nonzero entries.
    pub fn support(&self) -> usize {
        (0..self.len()).filter(|&k| self.entry(k).iter().any(|x| !x.is_zero())).count()
    }
}

/// The inhomogeneous differential,
/// (da)(g1..g_{d+1}) = g1·a(g2..) + Σ (−1)^i a(..g_i g_{i+1}..) + (−1)^{d+1} a(g1..g_d).
pub fn differential<S: Scalar>(model: &GroupModel<S>, ch: &Cochain<S>) -> Cochain<S> {
    let n = model.order();
    let d = ch.degree;
    let m = ch.module;
    let dim = m.dim();
    let mut out = Cochain::zero(n, m, d + 1);
    let mut g = vec![0usize; d + 1];
    let mut args = vec![0usize; d];
    let stride = n.pow(d as u32);
    for k in 0..n.pow(d as u32 + 1) {
        let mut r = k;
        for i in (0..=d).rev() {
            g[i] = r % n;
            r /= n;
        }
        let slot = &mut out.values[k * dim..(k + 1) * dim];
        if d == 0 {
            act_accumulate(model, m, g[0], ch.entry(0), false, slot);
            accumulate(ch.entry(0), true, slot);
            continue;
        }
        act_accumulate(model, m, g[0], ch.entry(k % stride), false, slot);
        for i in 0..d {
            for (j, a) in args.iter_mut().enumerate() {
                *a = if j < i {
                    g[j]
                } else if j == i {
                    model.mul(g[i], g[i + 1])
                } else {
                    g[j + 1]
                };
            }
            accumulate(ch.at(&args, n), i % 2 == 0, slot);
        }
        accumulate(ch.entry(k / n), d % 2 == 0, slot);
    }
    out
}

/// Value pairing used by the cup product and the module it lands in.
fn pairing(m1: Module, m2: Module) -> Option<Module> {
    match (m1, m2) {
        (Module::Trivial, m) => Some(m),
        (m, Module::Trivial) => Some(m),
        (Module::L1, Module::L1) => Some(Module::Z),
        _ => None,
    }
}

fn pair_values<S: Scalar>(m1: Module, m2: Module, x: &[S], y: &[S]) -> Vec<S> {
    match (m1, m2) {
        (Module::Trivial, _) => y.iter().map(|v| x[0].mul(v)).collect(),
        (_, Module::Trivial) => x.iter().map(|v| v.mul(&y[0])).collect(),
        _ => vec![bracket(&[x[0].clone(), x[1].clone()], &[y[0].clone(), y[1].clone()])],
    }
}

/// (c1 ∪ c2)(g, h) = [c1(g), g·c2(h)], with g the product of the first
/// block of arguments; scalars pair by multiplication, L1 with L1 by the
/// symplectic bracket into Z. A 0-cochain on the right is the constant
/// element it holds.
pub fn cup<S: Scalar>(model: &GroupModel<S>, c1: &Cochain<S>, c2: &Cochain<S>) -> Result<Cochain<S>, NilpotentError> {
    let out = pairing(c1.module, c2.module)
        .ok_or_else(|| NilpotentError::Shape(format!("no pairing {:?} x {:?}", c1.module, c2.module)))?;
    let n = model.order();
    let (p, q) = (c1.degree, c2.degree);
    Ok(Cochain::from_fn(n, out, p + q, |g| {
        let x = c1.at(&g[..p], n);
        let prod = g[..p].iter().fold(0usize, |acc, &h| model.mul(acc, h));
        let y = act(model, c2.module, prod, c2.at(&g[p..], n));
        pair_values(c1.module, c2.module, x, &y)
    }))
}

/// A 1-cochain valued in L1 + Z from its two parts.
pub fn as_elements<S: Scalar>(a1: &Cochain<S>, a2: &Cochain<S>) -> Vec<NilpotentElement<S>> {
    (0..a1.len())
        .map(|g| {
            let x = a1.entry(g);
            NilpotentElement::new(x[0].clone(), x[1].clone(), a2.entry(g)[0].clone())
        })
        .collect()
}

/// Split a list of group-valued values back into L1 and Z cochains.
pub fn from_elements<S: Scalar>(vals: &[NilpotentElement<S>]) -> (Cochain<S>, Cochain<S>) {
    let a1 = Cochain { module: Module::L1, degree: 1, values: vals.iter().flat_map(|u| [u.a.clone(), u.b.clone()]).collect() };
    let a2 = Cochain { module: Module::Z, degree: 1, values: vals.iter().map(|u| u.c.clone()).collect() };
    (a1, a2)
}
