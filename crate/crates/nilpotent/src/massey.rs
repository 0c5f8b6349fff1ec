//! Non-abelian cocycles a = a1 + a2, the Massey cocycle φ = b∪a1 − 2c∪a2,
//! gauge changes and the rescaling decomposition of φ.

use rand::Rng;

use crate::cochain::{cup, differential, Cochain, Module};
use crate::element::{bch_mul, m_lambda, NilpotentElement};
use crate::error::NilpotentError;
use crate::group::GroupModel;
use crate::scalar::Scalar;
use crate::solve::{random_cocycle, solve_coboundary};

#[derive(Clone, Debug)]
pub struct CocycleCheck<S> {
    pub ok: bool,
    /// da1.
    pub linear_defect: Cochain<S>,
    /// da2 + ½ a1∪a1.
    pub quadratic_defect: Cochain<S>,
}

fn half<S: Scalar>() -> Result<S, NilpotentError> {
    S::half().ok_or(NilpotentError::CharacteristicTwo)
}

fn expect_shape<S>(ch: &Cochain<S>, module: Module, degree: usize, what: &str) -> Result<(), NilpotentError> {
    if ch.module != module || ch.degree != degree {
        return Err(NilpotentError::Shape(format!("{what}: expected {module:?}/{degree}, got {:?}/{}", ch.module, ch.degree)));
    }
    Ok(())
}

/// a1 is a cocycle and da2 = −½ a1∪a1.
pub fn check_nonabelian_cocycle<S: Scalar>(
    model: &GroupModel<S>,
    a1: &Cochain<S>,
    a2: &Cochain<S>,
) -> Result<CocycleCheck<S>, NilpotentError> {
    expect_shape(a1, Module::L1, 1, "a1")?;
    expect_shape(a2, Module::Z, 1, "a2")?;
    let linear_defect = differential(model, a1);
    let quadratic_defect = differential(model, a2).add(&cup(model, a1, a1)?.scale(&half()?))?;
    Ok(CocycleCheck { ok: linear_defect.is_zero() && quadratic_defect.is_zero(), linear_defect, quadratic_defect })
}

/// φ = b∪a1 − 2c∪a2, after checking the cocycle conditions and db = c∪a1.
pub fn massey_phi<S: Scalar>(
    model: &GroupModel<S>,
    b: &Cochain<S>,
    a1: &Cochain<S>,
    a2: &Cochain<S>,
) -> Result<Cochain<S>, NilpotentError> {
    expect_shape(b, Module::L1, 1, "b")?;
    let check = check_nonabelian_cocycle(model, a1, a2)?;
    if !check.ok {
        return Err(NilpotentError::Precondition(format!(
            "(a1, a2) is not a cocycle: {} + {} nonzero entries",
            check.linear_defect.support(),
            check.quadratic_defect.support()
        )));
    }
    let c = Cochain::character(model);
    let defect = differential(model, b).sub(&cup(model, &c, a1)?)?;
    if !defect.is_zero() {
        return Err(NilpotentError::Precondition(format!("db != c∪a1 at {} entries", defect.support())));
    }
    let phi = cup(model, b, a1)?.sub(&cup(model, &c, a2)?.scale(&S::from_i64(2)))?;
    let dphi = differential(model, &phi);
    if !dphi.is_zero() {
        return Err(NilpotentError::Precondition(format!("dφ != 0 at {} entries", dphi.support())));
    }
    Ok(phi)
}

/// A cocycle a = (a1, a2) with a chosen b, db = c∪a1.
#[derive(Clone, Debug)]
pub struct MasseyInstance<S> {
    pub a1: Cochain<S>,
    pub a2: Cochain<S>,
    pub b: Cochain<S>,
}

impl<S: Scalar> MasseyInstance<S> {
    /// Random a1, then a2 and b from the solver. Resamples a1 when the
    /// quadratic equation has no solution.
    pub fn random<R: Rng + ?Sized>(model: &GroupModel<S>, rng: &mut R) -> Result<Self, NilpotentError> {
        let c = Cochain::character(model);
        for _ in 0..8 {
            let a1 = random_cocycle(model, Module::L1, rng);
            let target = cup(model, &a1, &a1)?.scale(&half::<S>()?.neg());
            let Ok(sol2) = solve_coboundary(model, &target) else { continue };
            let a2 = sol2.random(rng);
            let Ok(solb) = solve_coboundary(model, &cup(model, &c, &a1)?) else { continue };
            let b = solb.random(rng);
            return Ok(MasseyInstance { a1, a2, b });
        }
        Err(NilpotentError::Unsolvable)
    }

    pub fn phi(&self, model: &GroupModel<S>) -> Result<Cochain<S>, NilpotentError> {
        massey_phi(model, &self.b, &self.a1, &self.a2)
    }

    pub fn elements(&self) -> Vec<NilpotentElement<S>> {
        crate::cochain::as_elements(&self.a1, &self.a2)
    }
}

/// (u·a)(g) = u * a(g) * g(u⁻¹).
pub fn gauge_action<S: Scalar>(
    model: &GroupModel<S>,
    u: &NilpotentElement<S>,
    a: &[NilpotentElement<S>],
) -> Result<Vec<NilpotentElement<S>>, NilpotentError> {
    let uinv = u.inverse();
    a.iter()
        .enumerate()
        .map(|(g, ag)| bch_mul(&bch_mul(u, ag)?, &model.act_element(g, &uinv)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct GaugeCertificate<S> {
    pub moved: MasseyInstance<S>,
    pub phi_before: Cochain<S>,
    pub phi_after: Cochain<S>,
    /// w with dw = φ_after − φ_before.
    pub preimage: Cochain<S>,
}

/// Move the instance by u, replace b by b + c∪u1 and certify that φ changes
/// by a coboundary.
pub fn gauge_certificate<S: Scalar>(
    model: &GroupModel<S>,
    inst: &MasseyInstance<S>,
    u: &NilpotentElement<S>,
) -> Result<GaugeCertificate<S>, NilpotentError> {
    let moved_vals = gauge_action(model, u, &inst.elements())?;
    let (a1, a2) = crate::cochain::from_elements(&moved_vals);
    let n = model.order();
    let u1 = Cochain::from_fn(n, Module::L1, 0, |_| vec![u.a.clone(), u.b.clone()]);
    let b = inst.b.add(&cup(model, &Cochain::character(model), &u1)?)?;
    let moved = MasseyInstance { a1, a2, b };
    let phi_before = inst.phi(model)?;
    let phi_after = moved.phi(model)?;
    let diff = phi_after.sub(&phi_before)?;
    let preimage = solve_coboundary(model, &diff)?.particular;
    if differential(model, &preimage) != diff {
        return Err(NilpotentError::Unsolvable);
    }
    Ok(GaugeCertificate { moved, phi_before, phi_after, preimage })
}

#[derive(Clone, Debug)]
pub struct Decomposition<S> {
    pub lhs: Cochain<S>,
    pub rhs: Cochain<S>,
    pub residual: Cochain<S>,
    /// w with dw = lhs − rhs.
    pub preimage: Cochain<S>,
}

/// For s = (s1, s2) with s1 = λ a1(y) and s2 − λ² a2(y) central, and b_s with
/// db_s = c∪s1: compare φ_s against λ²φ_y + 2c∪(central part of m(λ)a(y) − s).
pub fn rescaling_decomposition<S: Scalar>(
    model: &GroupModel<S>,
    y: &MasseyInstance<S>,
    lambda: &S,
    s1: &Cochain<S>,
    s2: &Cochain<S>,
    b_s: &Cochain<S>,
) -> Result<Decomposition<S>, NilpotentError> {
    if *s1 != y.a1.scale(lambda) {
        return Err(NilpotentError::Precondition("s1 is not λ·a1(y)".into()));
    }
    let scaled: Vec<NilpotentElement<S>> = y.elements().iter().map(|v| m_lambda(lambda, v)).collect();
    let (_, scaled_central) = crate::cochain::from_elements(&scaled);
    let twist = scaled_central.sub(s2)?;
    let c = Cochain::character(model);
    let lhs = massey_phi(model, b_s, s1, s2)?;
    let phi_y = y.phi(model)?;
    let rhs = phi_y.scale(&lambda.mul(lambda)).add(&cup(model, &c, &twist)?.scale(&S::from_i64(2)))?;
    let residual = lhs.sub(&rhs)?;
    let preimage = solve_coboundary(model, &residual)?.particular;
    if differential(model, &preimage) != residual {
        return Err(NilpotentError::Unsolvable);
    }
    Ok(Decomposition { lhs, rhs, residual, preimage })
}

/// A rescaled and twisted copy of y: s1 = λa1, s2 = λ²a2 + z with z a random
/// central cocycle, b_s = λb + dv for a random L1 vector v.
pub fn random_rescaling<S: Scalar, R: Rng + ?Sized>(
    model: &GroupModel<S>,
    y: &MasseyInstance<S>,
    lambda: &S,
    rng: &mut R,
) -> Result<(Cochain<S>, Cochain<S>, Cochain<S>), NilpotentError> {
    let n = model.order();
    let z = random_cocycle(model, Module::Z, rng);
    let v = Cochain::random(n, Module::L1, 0, rng);
    let s1 = y.a1.scale(lambda);
    let s2 = y.a2.scale(&lambda.mul(lambda)).add(&z)?;
    let b_s = y.b.scale(lambda).add(&differential(model, &v))?;
    Ok((s1, s2, b_s))
}
