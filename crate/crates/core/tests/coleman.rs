use std::sync::OnceLock;

use num_bigint::BigInt;
use qc_core::coleman::{disk_parameter, short_y, ColemanIntegrals};
use qc_core::curve::{integer_point, point_to_padic, CurvePoint, DiskKind, RationalPoint, WeierstrassCurve};
use qc_core::padic::PadicNumber;
use qc_core::rigidcoh::{disk_chart, FrobeniusData};
use rand::{Rng, SeedableRng};

const P: u32 = 7;
const N: i32 = 12;

fn c37a() -> WeierstrassCurve {
    WeierstrassCurve::from_i64s([0, 0, 1, -1, 0]).unwrap()
}

fn build(curve: &WeierstrassCurve, p: u32, n: i32) -> ColemanIntegrals {
    let frob = FrobeniusData::compute(curve, p, n).unwrap();
    ColemanIntegrals::new(curve, &frob).unwrap()
}

fn integrals() -> &'static ColemanIntegrals {
    static CELL: OnceLock<ColemanIntegrals> = OnceLock::new();
    CELL.get_or_init(|| build(&c37a(), P, N))
}

/// Valuation of a − b, or the available precision when they agree fully.
fn agreement(a: &PadicNumber, b: &PadicNumber) -> i32 {
    let d = a - b;
    if d.is_zero() {
        d.precision()
    } else {
        d.valuation()
    }
}

fn padic(pt: &RationalPoint) -> CurvePoint<PadicNumber> {
    point_to_padic(pt, P, 2 * N)
}

fn gen() -> RationalPoint {
    integer_point(&BigInt::from(0), &BigInt::from(0))
}

/// Multiples of (0,0) that avoid the disk of the origin at 7 (order 9 there).
fn sample_multiple(rng: &mut impl Rng) -> i64 {
    loop {
        let m: i64 = rng.gen_range(-13..=13);
        if m % 9 != 0 {
            return m;
        }
    }
}

#[test]
fn log_alpha_is_a_homomorphism() {
    let ci = integrals();
    let e = c37a();
    let mut rng = rand::rngs::StdRng::seed_from_u64(37);
    let mut done = 0;
    while done < 20 {
        let (a, b) = (sample_multiple(&mut rng), sample_multiple(&mut rng));
        if (a + b) % 9 == 0 {
            continue;
        }
        let (pa, pb) = (e.mul(&gen(), a), e.mul(&gen(), b));
        let sum = e.add(&pa, &pb);
        let la = ci.log_alpha();
        let lhs = la.evaluate(&padic(&sum)).unwrap();
        let rhs = &la.evaluate(&padic(&pa)).unwrap() + &la.evaluate(&padic(&pb)).unwrap();
        let v = agreement(&lhs, &rhs);
        assert!(v >= N - 3, "a={a} b={b} v={v}");
        done += 1;
    }
}

#[test]
fn log_alpha_scales_along_multiples() {
    let ci = integrals();
    let e = c37a();
    let y = padic(&gen());
    let base = ci.log_alpha().evaluate(&y).unwrap();
    assert_eq!(base.valuation(), 1);
    for n in 1..=6i64 {
        let v = ci.log_alpha().evaluate(&padic(&e.mul(&gen(), n))).unwrap();
        assert!(agreement(&v, &base.mul_int(n)) >= N - 3, "n={n}");
    }
}

#[test]
fn doubling_of_the_generator() {
    let e = c37a();
    let two = e.mul(&gen(), 2);
    assert_eq!(two, integer_point(&BigInt::from(1), &BigInt::from(0)));
    let la = integrals().log_alpha();
    let lhs = la.evaluate(&padic(&two)).unwrap();
    let rhs = la.evaluate(&padic(&gen())).unwrap().mul_int(2);
    assert!(agreement(&lhs, &rhs) >= N - 3);
}

#[test]
fn log_alpha_is_odd() {
    let ci = integrals();
    let e = c37a();
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for _ in 0..20 {
        let m = sample_multiple(&mut rng);
        let z = e.mul(&gen(), m);
        let a = ci.log_alpha().evaluate(&padic(&z)).unwrap();
        let b = ci.log_alpha().evaluate(&padic(&e.neg(&z))).unwrap();
        assert!(agreement(&a, &-&b) >= N - 3, "m={m}");
    }
}

#[test]
fn two_torsion_has_zero_logarithm() {
    // y² = x(x − 1)(x + 2): full rational 2-torsion, all points in
    // Weierstrass disks.
    let e = WeierstrassCurve::from_i64s([0, 1, 0, -2, 0]).unwrap();
    let p = 7;
    assert_ne!(e.count_points(p).unwrap().a_p % p as i64, 0, "test curve must be ordinary at 7");
    let ci = build(&e, p, 10);
    assert!(ci.disks.iter().any(|d| d.kind == DiskKind::Weierstrass));
    for x in [0i64, 1, -2] {
        let t = integer_point(&BigInt::from(x), &BigInt::from(0));
        assert_eq!(e.torsion_order(&t), Some(2));
        let z = point_to_padic(&t, p, 20);
        for f in [ci.log_alpha()] {
            let v = f.evaluate(&z).unwrap();
            assert!(v.is_zero() || v.valuation() >= 10 - 3, "x={x} v={}", v.valuation());
        }
    }
}

#[test]
fn shuffle_identity() {
    let ci = integrals();
    let e = c37a();
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..20 {
        let z = padic(&e.mul(&gen(), sample_multiple(&mut rng)));
        let ab = ci.d2().evaluate(&z).unwrap();
        let ba = ci.d2_reversed().evaluate(&z).unwrap();
        let la = ci.log_alpha().evaluate(&z).unwrap();
        let lb = ci.log_beta().evaluate(&z).unwrap();
        assert!(agreement(&(&ab + &ba), &(&la * &lb)) >= N - 3);
    }
}

#[test]
fn origin_disk_normalisation() {
    let ci = integrals();
    for f in [ci.log_alpha(), ci.log_beta()] {
        assert_eq!(f.e_disk.log_degree(), 0);
        assert!(f.e_disk.power_part().coeff(0).is_zero());
    }
    // log_β = −1/t + O(t) in the parameter t = −x/y.
    let lb = ci.log_beta().e_disk.power_part();
    assert!(agreement(&lb.coeff(-1), &PadicNumber::from_i64(P, -1, N)) >= N);
    let d2 = &ci.d2().e_disk;
    assert_eq!(d2.log_degree(), 1);
    assert!(d2.power_part().coeff(0).is_zero());
    let lc = d2.part(1).unwrap();
    assert!(agreement(&lc.coeff(0), &PadicNumber::from_i64(P, -1, N)) >= N);
    for k in 1..6 {
        assert!(lc.coeff(k).is_zero(), "log coefficient has a t^{k} term");
    }
}

#[test]
fn value_at_disk_centre_is_the_constant() {
    let ci = integrals();
    for (i, d) in ci.disks.iter().enumerate() {
        if d.kind != DiskKind::Good {
            continue;
        }
        let zero = PadicNumber::zero(P, 2 * N);
        for f in [ci.log_alpha(), ci.log_beta(), ci.d2()] {
            let v = f.evaluate_in_disk(i, &zero);
            assert!(agreement(&v, &f.disks[i].series.coeff(0)) >= f.precision);
        }
        let half = PadicNumber::one(P, 2 * N).div_int(2);
        let la = ci.log_alpha().evaluate_in_disk(i, &zero);
        assert!(agreement(&la, &(&ci.centre_single[i][0] * &half)) >= N);
    }
}

#[test]
fn d2_two_routes_agree_on_integral_points() {
    let e = c37a();
    let mut ci = integrals().clone();
    let pts = e.integral_points(10_000);
    assert_eq!(pts.len(), 10);
    for (x, y) in pts {
        let z = padic(&integer_point(&x, &y));
        let direct = ci.d2().evaluate(&z).unwrap();
        let chained = ci.d2_by_multiplication(&z).unwrap();
        assert!(agreement(&direct, &chained) >= N - 3, "({x},{y})");
    }
    for mc in ci.multiplication.values() {
        assert!(mc.residual_valuation >= N - 3, "n={} residual {}", mc.n, mc.residual_valuation);
    }
}

#[test]
fn lower_precision_is_a_truncation() {
    let e = c37a();
    let lo = build(&e, P, 8);
    let hi = integrals();
    for (x, y) in e.integral_points(100) {
        let z = padic(&integer_point(&x, &y));
        for (a, b) in [
            (lo.log_alpha(), hi.log_alpha()),
            (lo.log_beta(), hi.log_beta()),
            (lo.d2(), hi.d2()),
            (lo.d2_reversed(), hi.d2_reversed()),
        ] {
            let (va, vb) = (a.evaluate(&z).unwrap(), b.evaluate(&z).unwrap());
            assert!(va.precision() >= 8);
            assert!(agreement(&va, &vb) >= 8, "{} at ({x},{y})", a.word.name());
        }
    }
}

#[test]
fn derivatives_reproduce_integrands() {
    let ci = integrals();
    let e = c37a();
    let half = PadicNumber::one(P, 2 * N).div_int(2);
    for (i, d) in ci.disks.iter().enumerate() {
        let la = &ci.log_alpha().disks[i].series;
        let lb = &ci.log_beta().disks[i].series;
        let d2 = &ci.d2().disks[i].series;
        let order = la.order();
        let chart = disk_chart(&e, d, 2 * N, order).unwrap();
        let alpha = chart.omega[0].scale(&half);
        let beta = chart.omega[1].scale(&half);
        let checks = [(la.derivative(), alpha.clone()), (lb.derivative(), beta), (d2.derivative(), lb.mul(&alpha))];
        for (w, (lhs, rhs)) in checks.iter().enumerate() {
            for k in 0..order - 2 {
                let v = agreement(&lhs.coeff(k), &rhs.coeff(k));
                assert!(v >= N - 3, "disk {i} form {w} k={k} v={v}");
            }
        }
    }
}

#[test]
fn frobenius_equivariance_off_centre() {
    let ci = integrals();
    let e = c37a();
    let frob = &ci.frob;
    let half = PadicNumber::one(P, 2 * N).div_int(2);
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for _ in 0..8 {
        let z = padic(&e.mul(&gen(), sample_multiple(&mut rng)));
        let (i, s) = disk_parameter(&e, &ci.disks, &z).unwrap();
        let d = &ci.disks[i];
        let CurvePoint::Affine(x, y) = &z else { unreachable!() };
        // φ(x) = x^p stays in the disk of a Teichmüller centre.
        let phx = x.pow(P as i64).unwrap();
        let ybig = short_y(&e, x, y);
        let phs = &phx - &d.x0;
        assert!(phs.valuation() >= 1);
        let fz = [ci.log_alpha().evaluate_in_disk(i, &s), ci.log_beta().evaluate_in_disk(i, &s)];
        let fphi = [ci.log_alpha().evaluate_in_disk(i, &phs), ci.log_beta().evaluate_in_disk(i, &phs)];
        for k in 0..2 {
            // (F_k∘φ − Σ_j M_jk F_j − g_k − c_k)/2 with F = 2·log.
            let mut r = &fphi[k] - &(&(frob.m(0, k) * &fz[0]) + &(frob.m(1, k) * &fz[1]));
            r = &r - &(&frob.primitives[k].eval(x, &ybig) * &half);
            r = &r - &(&ci.single_constants[k] * &half);
            assert!(r.is_zero() || r.valuation() >= N - 3, "form {k} v={}", r.valuation());
        }
    }
}

#[test]
fn weierstrass_disk_at_five() {
    let e = c37a();
    let p = 5;
    let n = 10;
    let mut ci = build(&e, p, n);
    let w = ci.disks.iter().filter(|d| d.kind == DiskKind::Weierstrass).count();
    assert_eq!(w, 1);
    let pt = |x: i64, y: i64| integer_point(&BigInt::from(x), &BigInt::from(y));
    let z = |q: &RationalPoint| point_to_padic(q, p, 2 * n);
    let (a, b) = (pt(2, 2), pt(0, 0));
    let sum = e.add(&a, &b);
    let la = ci.log_alpha();
    let lhs = la.evaluate(&z(&sum)).unwrap();
    let rhs = &la.evaluate(&z(&a)).unwrap() + &la.evaluate(&z(&b)).unwrap();
    assert!(agreement(&lhs, &rhs) >= n - 3);
    let neg = la.evaluate(&z(&pt(2, -3))).unwrap();
    assert!(agreement(&la.evaluate(&z(&a)).unwrap(), &-&neg) >= n - 3);
    for (x, y) in e.integral_points(100) {
        let q = z(&integer_point(&x, &y));
        let direct = ci.d2().evaluate(&q).unwrap();
        let chained = ci.d2_by_multiplication(&q).unwrap();
        assert!(agreement(&direct, &chained) >= n - 3, "({x},{y})");
        let s = &direct + &ci.d2_reversed().evaluate(&q).unwrap();
        let prod = &ci.log_alpha().evaluate(&q).unwrap() * &ci.log_beta().evaluate(&q).unwrap();
        assert!(agreement(&s, &prod) >= n - 3);
    }
}
