//! Solving du = t for a 1-cochain u.
//!
//! u is pinned by its values on the generators: u(e) = t(e, e) and
//! u(s·g) = s·u(g) + u(s) − t(s, g). The remaining instances of the
//! equation become linear conditions on the generator values.

use std::collections::VecDeque;

use crate::cochain::{act, differential, Cochain, Module};
use crate::error::NilpotentError;
use crate::group::GroupModel;
use crate::scalar::Scalar;

/// An affine form in k unknowns: coefficients then the constant.
type Form<S> = Vec<S>;

#[derive(Clone, Debug)]
pub struct Solution<S> {
    pub particular: Cochain<S>,
    /// Basis of the 1-cocycles; adding any combination keeps du = t.
    pub kernel: Vec<Cochain<S>>,
}

impl<S: Scalar> Solution<S> {
    pub fn with_coefficients(&self, coeffs: &[S]) -> Cochain<S> {
        let mut u = self.particular.clone();
        for (k, c) in self.kernel.iter().zip(coeffs) {
            u = u.add(&k.scale(c)).expect("same shape");
        }
        u
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Cochain<S> {
        let coeffs: Vec<S> = (0..self.kernel.len()).map(|_| S::random(rng)).collect();
        self.with_coefficients(&coeffs)
    }
}

fn act_forms<S: Scalar>(model: &GroupModel<S>, m: Module, g: usize, v: &[Form<S>]) -> Vec<Form<S>> {
    let width = v[0].len();
    let mut out = vec![vec![S::zero(); width]; v.len()];
    for j in 0..width {
        let col: Vec<S> = v.iter().map(|f| f[j].clone()).collect();
        for (c, x) in act(model, m, g, &col).into_iter().enumerate() {
            out[c][j] = x;
        }
    }
    out
}

fn fadd<S: Scalar>(x: &Form<S>, y: &Form<S>) -> Form<S> {
    x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
}

fn fsub<S: Scalar>(x: &Form<S>, y: &Form<S>) -> Form<S> {
    x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
}

/// Reduced row echelon rows over k unknowns plus a constant column.
struct Echelon<S> {
    k: usize,
    rows: Vec<(usize, Form<S>)>,
}

impl<S: Scalar> Echelon<S> {
    /// Returns false if the equation is inconsistent.
    fn insert(&mut self, mut eq: Form<S>) -> bool {
        for (p, row) in &self.rows {
            if !eq[*p].is_zero() {
                let f = eq[*p].clone();
                for j in 0..=self.k {
                    eq[j] = eq[j].sub(&f.mul(&row[j]));
                }
            }
        }
        let Some(p) = (0..self.k).find(|&j| !eq[j].is_zero()) else {
            return eq[self.k].is_zero();
        };
        let inv = eq[p].inv().expect("nonzero pivot");
        for x in eq.iter_mut() {
            *x = x.mul(&inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..=self.k {
                    row[j] = row[j].sub(&f.mul(&eq[j]));
                }
            }
        }
        self.rows.push((p, eq));
        true
    }
}

/// Find u with du = t (t a 2-cochain), or report that none exists.
pub fn solve_coboundary<S: Scalar>(model: &GroupModel<S>, t: &Cochain<S>) -> Result<Solution<S>, NilpotentError> {
    if t.degree != 2 {
        return Err(NilpotentError::Shape("target must be a 2-cochain".into()));
    }
    let n = model.order();
    let m = t.module;
    let dim = m.dim();
    let gens = &model.generators;
    let k = gens.len() * dim;
    let constant = |v: &[S]| -> Vec<Form<S>> {
        v.iter()
            .map(|x| {
                let mut f = vec![S::zero(); k + 1];
                f[k] = x.clone();
                f
            })
            .collect()
    };
    let mut u: Vec<Option<Vec<Form<S>>>> = vec![None; n];
    u[0] = Some(constant(t.at2(0, 0, n)));
    let mut queue = VecDeque::from([0usize]);
    for (j, &s) in gens.iter().enumerate() {
        if u[s].is_none() {
            let forms = (0..dim)
                .map(|c| {
                    let mut f = vec![S::zero(); k + 1];
                    f[j * dim + c] = S::one();
                    f
                })
                .collect();
            u[s] = Some(forms);
            queue.push_back(s);
        }
    }
    while let Some(g) = queue.pop_front() {
        for &s in gens {
            let h = model.mul(s, g);
            if u[h].is_some() {
                continue;
            }
            let sg = act_forms(model, m, s, u[g].as_ref().unwrap());
            let us = u[s].as_ref().unwrap();
            let tv = constant(t.at2(s, g, n));
            let val = (0..dim).map(|c| fsub(&fadd(&sg[c], &us[c]), &tv[c])).collect();
            u[h] = Some(val);
            queue.push_back(h);
        }
    }
    let u: Vec<Vec<Form<S>>> = u.into_iter().map(|x| x.expect("generators reach every element")).collect();
    let mut ech = Echelon { k, rows: Vec::new() };
    // Equations at (s, g) with s a generator suffice when t is a cocycle: the
    // defect w = du − t is then a cocycle with w(s, ·) = 0, and
    // w(sg, h) = s·w(g, h) propagates this to every first argument. The
    // final differential check rejects targets that are not cocycles.
    for g in 0..n {
        for &s in gens {
            let su = act_forms(model, m, s, &u[g]);
            let tv = constant(t.at2(s, g, n));
            for c in 0..dim {
                let eq = fsub(&fadd(&fsub(&su[c], &u[model.mul(s, g)][c]), &u[s][c]), &tv[c]);
                if !ech.insert(eq) {
                    return Err(NilpotentError::Unsolvable);
                }
            }
        }
    }
    let pivots: Vec<usize> = ech.rows.iter().map(|(p, _)| *p).collect();
    let free: Vec<usize> = (0..k).filter(|j| !pivots.contains(j)).collect();
    let eval = |x: &[S]| -> Cochain<S> {
        Cochain {
            module: m,
            degree: 1,
            values: u
                .iter()
                .flat_map(|forms| forms.iter().map(|f| (0..k).fold(f[k].clone(), |acc, j| acc.add(&f[j].mul(&x[j])))))
                .collect(),
        }
    };
    let mut x0 = vec![S::zero(); k];
    for (p, row) in &ech.rows {
        x0[*p] = row[k].neg();
    }
    let particular = eval(&x0);
    if differential(model, &particular) != *t {
        return Err(NilpotentError::Unsolvable);
    }
    let mut kernel = Vec::new();
    for &f in &free {
        let mut x = vec![S::zero(); k];
        x[f] = S::one();
        for (p, row) in &ech.rows {
            x[*p] = row[f].neg();
        }
        // Homogeneous part only: subtract the particular solution's constants.
        let with = eval(&x);
        let base = eval(&vec![S::zero(); k]);
        kernel.push(with.sub(&base).expect("same shape"));
    }
    Ok(Solution { particular, kernel })
}

/// Random 1-cocycle with values in `module`.
pub fn random_cocycle<S: Scalar, R: rand::Rng + ?Sized>(
    model: &GroupModel<S>,
    module: Module,
    rng: &mut R,
) -> Cochain<S> {
    let zero = Cochain::zero(model.order(), module, 2);
    solve_coboundary(model, &zero).expect("zero is a coboundary").random(rng)
}
