//! Finite groups acting linearly on L1 = span(A, B), on the centre Z through
//! the determinant, with an additive character c: G → scalars.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::element::NilpotentElement;
use crate::error::NilpotentError;
use crate::scalar::Scalar;

pub type Mat<S> = [[S; 2]; 2];

fn mat_mul<S: Scalar>(x: &Mat<S>, y: &Mat<S>) -> Mat<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]))))
}

fn det<S: Scalar>(m: &Mat<S>) -> S {
    m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]))
}

pub fn int_matrix<S: Scalar>(m: [[i64; 2]; 2]) -> Mat<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| S::from_i64(m[i][j])))
}

#[derive(Clone, Debug)]
pub struct GroupModel<S: Scalar> {
    pub name: String,
    /// Element 0 is the identity.
    pub matrices: Vec<Mat<S>>,
    pub dets: Vec<S>,
    pub character: Vec<S>,
    pub generators: Vec<usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
}

impl<S: Scalar + std::hash::Hash + Eq> GroupModel<S> {
    /// The matrix group generated by `gens`, with c(gen) as given; c is
    /// extended multiplicatively and must be well defined.
    pub fn from_generators(name: &str, gens: &[(Mat<S>, S)], max_order: usize) -> Result<Self, NilpotentError> {
        let id: Mat<S> = int_matrix([[1, 0], [0, 1]]);
        let mut matrices = vec![id.clone()];
        let mut character = vec![S::zero()];
        let mut index: HashMap<Mat<S>, usize> = HashMap::from([(id, 0)]);
        let mut generators = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        let mut gen_index = vec![usize::MAX; gens.len()];
        while let Some(g) = queue.pop_front() {
            for (k, (m, c)) in gens.iter().enumerate() {
                let h = mat_mul(m, &matrices[g]);
                let ch = c.add(&character[g]);
                let idx = match index.get(&h) {
                    Some(&i) => {
                        if character[i] != ch {
                            return Err(NilpotentError::BadModel(format!("{name}: character is not a homomorphism")));
                        }
                        i
                    }
                    None => {
                        if matrices.len() >= max_order {
                            return Err(NilpotentError::BadModel(format!("{name}: order exceeds {max_order}")));
                        }
                        matrices.push(h.clone());
                        character.push(ch);
                        index.insert(h, matrices.len() - 1);
                        queue.push_back(matrices.len() - 1);
                        matrices.len() - 1
                    }
                };
                if g == 0 {
                    gen_index[k] = idx;
                }
            }
        }
        for &g in &gen_index {
            if g != 0 && !generators.contains(&g) {
                generators.push(g);
            }
        }
        let n = matrices.len();
        let mut table = vec![0u32; n * n];
        for g in 0..n {
            for h in 0..n {
                let gh = index[&mat_mul(&matrices[g], &matrices[h])];
                if character[gh] != character[g].add(&character[h]) {
                    return Err(NilpotentError::BadModel(format!("{name}: character is not additive")));
                }
                table[g * n + h] = gh as u32;
            }
        }
        let inverses = (0..n).map(|g| (0..n).find(|&h| table[g * n + h] == 0).expect("finite group")).collect();
        let dets = matrices.iter().map(det).collect();
        Ok(GroupModel { name: name.into(), matrices, dets, character, generators, table, inverses })
    }
}

impl<S: Scalar> GroupModel<S> {
    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order() + h] as usize
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn act_l1(&self, g: usize, v: &[S; 2]) -> [S; 2] {
        let m = &self.matrices[g];
        [m[0][0].mul(&v[0]).add(&m[0][1].mul(&v[1])), m[1][0].mul(&v[0]).add(&m[1][1].mul(&v[1]))]
    }

    pub fn act_z(&self, g: usize, z: &S) -> S {
        self.dets[g].mul(z)
    }

    pub fn act_element(&self, g: usize, u: &NilpotentElement<S>) -> NilpotentElement<S> {
        let [a, b] = self.act_l1(g, &u.l1());
        NilpotentElement::new(a, b, self.act_z(g, &u.c))
    }

    /// Whether c is identically zero (it must be when char ∤ |G|).
    pub fn character_is_trivial(&self) -> bool {
        self.character.iter().all(|c| c.is_zero())
    }
}

/// A fixed family of models over S: small groups of order ≤ 12 built from
/// integer matrices of finite order, and, in odd characteristic q ≤ 211,
/// unipotent models of order q and 2q carrying a nonzero character.
pub fn standard_models<S: Scalar + std::hash::Hash + Eq>() -> Vec<GroupModel<S>> {
    let m = int_matrix::<S>;
    let z = S::zero;
    let rot3 = m([[0, -1], [1, -1]]);
    let rot4 = m([[0, -1], [1, 0]]);
    let rot6 = m([[1, -1], [1, 0]]);
    let swap = m([[0, 1], [1, 0]]);
    let neg = m([[-1, 0], [0, -1]]);
    let diag = m([[-1, 0], [0, 1]]);
    let mut specs: Vec<(&str, Vec<(Mat<S>, S)>)> = vec![
        ("trivial", vec![]),
        ("C2(-I)", vec![(neg.clone(), z())]),
        ("C2(diag)", vec![(diag.clone(), z())]),
        ("C3", vec![(rot3.clone(), z())]),
        ("C4", vec![(rot4.clone(), z())]),
        ("C6", vec![(rot6.clone(), z())]),
        ("C2xC2", vec![(neg.clone(), z()), (swap.clone(), z())]),
        ("S3", vec![(rot3, z()), (swap.clone(), z())]),
        ("D4", vec![(rot4, z()), (swap.clone(), z())]),
        ("D6", vec![(rot6, z()), (swap, z())]),
    ];
    let q = S::characteristic();
    let mut out = Vec::new();
    if q > 2 && q <= 211 {
        let u = m([[1, 1], [0, 1]]);
        specs.push(("U", vec![(u.clone(), S::one())]));
        specs.push(("U x C2(-I)", vec![(u.clone(), S::one()), (neg, z())]));
        // ζ² = −1 gives det(ζI) = −1: nonzero character and nontrivial action on Z.
        if let Some(zeta) = (2..q as i64).map(S::from_i64).find(|a| a.mul(a) == S::from_i64(-1)) {
            let scalar = [[zeta.clone(), S::zero()], [S::zero(), zeta]];
            specs.push(("U x C4(zeta I)", vec![(u, S::one()), (scalar, z())]));
        }
    }
    for (name, gens) in specs {
        let gens: Vec<_> = gens.into_iter().collect();
        out.push(GroupModel::from_generators(name, &gens, 1024).expect("standard model"));
    }
    out
}
