//! Randomized identity suite over a coefficient field.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::element::{bch_mul, involution_and_splitting, m_lambda, NilpotentElement};
use crate::group::{standard_models, GroupModel};
use crate::massey::{check_nonabelian_cocycle, gauge_certificate, rescaling_decomposition, random_rescaling, MasseyInstance};
use crate::scalar::Scalar;

pub const IDENTITIES: [&str; 7] =
    ["associativity", "m(lambda) homomorphism", "splitting", "maurer-cartan", "d(phi) = 0", "gauge coboundary", "rescaling residual"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityTally {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub field: String,
    pub instances: usize,
    pub tallies: Vec<IdentityTally>,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.tallies.iter().all(|t| t.passed == t.total)
    }
}

fn random_element<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> NilpotentElement<S> {
    NilpotentElement::new(S::random(rng), S::random(rng), S::random(rng))
}

/// Which model instance i runs on. The unipotent models are large, so they
/// take one instance in `heavy_every`.
fn pick<'a, S: Scalar>(small: &'a [GroupModel<S>], heavy: &'a [GroupModel<S>], i: usize, heavy_every: usize) -> &'a GroupModel<S> {
    if !heavy.is_empty() && i % heavy_every == heavy_every - 1 {
        &heavy[(i / heavy_every) % heavy.len()]
    } else {
        &small[i % small.len()]
    }
}

fn check_instance<S: Scalar, R: Rng + ?Sized>(model: &GroupModel<S>, rng: &mut R) -> Result<[bool; 7], String> {
    let (u, v, w) = (random_element::<S, _>(rng), random_element(rng), random_element(rng));
    let err = |e: crate::error::NilpotentError| format!("{}: {e}", model.name);
    let assoc = bch_mul(&bch_mul(&u, &v).map_err(err)?, &w).map_err(err)? == bch_mul(&u, &bch_mul(&v, &w).map_err(err)?).map_err(err)?;

    let lambda = S::random(rng);
    let hom = m_lambda(&lambda, &bch_mul(&u, &v).map_err(err)?) == bch_mul(&m_lambda(&lambda, &u), &m_lambda(&lambda, &v)).map_err(err)?;

    let x = u.l1();
    let s = involution_and_splitting(&x, &u).map_err(err)?;
    let other = involution_and_splitting(&x, &u.add(&NilpotentElement::central(S::random(rng)))).map_err(err)?;
    let mut split = s == other && s.l1() == x;
    for g in 0..model.order() {
        let gx = model.act_l1(g, &x);
        let lift = NilpotentElement::from_l1(&gx).add(&NilpotentElement::central(S::random(rng)));
        split &= involution_and_splitting(&gx, &lift).map_err(err)? == model.act_element(g, &s);
    }

    let inst = MasseyInstance::random(model, rng).map_err(err)?;
    let mc = check_nonabelian_cocycle(model, &inst.a1, &inst.a2).map_err(err)?.ok;
    let dphi = inst.phi(model).is_ok();
    let gauge = gauge_certificate(model, &inst, &random_element(rng)).is_ok();
    let lambda = S::random(rng);
    let (s1, s2, b_s) = random_rescaling(model, &inst, &lambda, rng).map_err(err)?;
    let rescale = rescaling_decomposition(model, &inst, &lambda, &s1, &s2, &b_s).is_ok();
    Ok([assoc, hom, split, mc, dphi, gauge, rescale])
}

/// Run `instances` random instances over S, cycling through the standard
/// models of order at most 128. Each instance has its own seed, so the
/// report does not depend on the thread count.
pub fn run_suite<S: Scalar + std::hash::Hash + Eq>(instances: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let models = standard_models::<S>();
    let (small, heavy): (Vec<_>, Vec<_>) = models.into_iter().filter(|m| m.order() <= 128).partition(|m| m.order() <= 12);
    let mut tallies: Vec<IdentityTally> = IDENTITIES.iter().map(|&name| IdentityTally { name, passed: 0, total: 0 }).collect();
    let mut failures = Vec::new();
    let results: Vec<_> = (0..instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = StdRng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64));
            check_instance(pick(&small, &heavy, i, 100), &mut rng)
        })
        .collect();
    for (i, result) in results.into_iter().enumerate() {
        let model = pick(&small, &heavy, i, 100);
        match result {
            Ok(results) => {
                for (t, ok) in tallies.iter_mut().zip(results) {
                    t.total += 1;
                    if ok {
                        t.passed += 1;
                    } else {
                        failures.push(format!("instance {i} on {}: {}", model.name, t.name));
                    }
                }
            }
            Err(e) => {
                for t in tallies.iter_mut() {
                    t.total += 1;
                }
                failures.push(format!("instance {i}: {e}"));
            }
        }
    }
    SuiteReport { field: S::name(), instances, tallies, failures, elapsed: start.elapsed() }
}
