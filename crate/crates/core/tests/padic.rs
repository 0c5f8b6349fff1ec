use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qc_core::padic::{ArithOp, PadicNumber};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn z7(n: i64, prec: i32) -> PadicNumber {
    PadicNumber::from_i64(7, n, prec)
}

#[test]
fn one_plus_six_is_seven() {
    let s = PadicNumber::arith(&z7(1, 10), &z7(6, 10), ArithOp::Add).unwrap();
    assert_eq!(s.valuation(), 1);
    assert_eq!(s.unit(), &num_bigint::BigUint::from(1u32));
    assert_eq!(s.precision(), 10);
}

#[test]
fn eight_squared() {
    let e = z7(8, 12);
    let sq = &e * &e;
    assert_eq!(sq.valuation(), 0);
    assert_eq!(sq, z7(64, 12));
}

#[test]
fn checked_arith_reports_exhaustion_and_division_by_zero() {
    let a = z7(5, 6);
    assert!(PadicNumber::arith(&a, &a, ArithOp::Sub).is_err());
    assert!(PadicNumber::arith(&a, &PadicNumber::zero(7, 6), ArithOp::Div).is_err());
    assert!(PadicNumber::arith(&a, &PadicNumber::from_i64(5, 1, 6), ArithOp::Add).is_err());
}

#[test]
fn precision_rules() {
    let a = z7(3, 10);
    let b = z7(7 * 2, 6);
    let s = &a + &b;
    assert_eq!(s.precision(), 6);
    // mul: min(N1 + v2, N2 + v1)
    let m = &a * &b;
    assert_eq!(m.precision(), 11.min(6));
    // division by p^1 * unit drops one digit
    let d = &a / &b;
    assert_eq!(d.valuation(), -1);
    assert_eq!(d.precision(), 5 - 1);
    // exact integer helpers do not lose precision on units
    assert_eq!(a.mul_int(7).precision(), 11);
    assert_eq!(a.div_int(7).precision(), 9);
}

#[test]
fn exact_zero_is_distinct() {
    let z = PadicNumber::exact_zero(7);
    let a = z7(3, 10);
    assert_eq!(&z + &a, a);
    assert!((&z * &a).is_exact_zero());
    let inexact = PadicNumber::zero(7, 4);
    assert!(!inexact.is_exact_zero());
    assert_eq!((&inexact * &a).precision(), 4);
}

#[test]
fn teichmuller_examples() {
    assert_eq!(z7(1, 8).teichmuller().unwrap(), z7(1, 8));
    assert_eq!(z7(6, 8).teichmuller().unwrap(), z7(-1, 8));
    // Oracle: Newton iteration on x^6 - 1 from 3, in plain integers mod 7^6.
    let m: i128 = 7i128.pow(6);
    let mut x: i128 = 3;
    for _ in 0..10 {
        // x <- x - (x^6 - 1) / (6 x^5)
        let x5 = (0..5).fold(1i128, |acc, _| acc * x % m);
        let f = (x5 * x - 1).rem_euclid(m);
        let df = 6 * x5 % m;
        let inv = modinv(df, m);
        x = (x - f * inv).rem_euclid(m);
    }
    let w = z7(3, 6).teichmuller().unwrap();
    assert_eq!(w, z7(x as i64, 6));
    let w6 = w.pow(6).unwrap();
    assert_eq!(w6, z7(1, 6));
    assert_eq!(w.residue(), Some(3));
}

fn modinv(a: i128, m: i128) -> i128 {
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(m), m, 1i128, 0i128);
    while r1 != 0 {
        let qq = r0 / r1;
        (r0, r1) = (r1, r0 - qq * r1);
        (s0, s1) = (s1, s0 - qq * s1);
    }
    s0.rem_euclid(m)
}

#[test]
fn iwasawa_log_examples() {
    assert!(z7(1, 10).log().unwrap().is_zero());
    assert!(z7(7, 10).log().unwrap().is_zero());
    // Partial sum oracle: 7 - 7^2/2 + 7^3/3 - 7^4/4, terms k >= 5 have valuation >= 5.
    let partial = q(7, 1) - q(49, 2) + q(343, 3) - q(2401, 4);
    let expect = PadicNumber::from_rational(7, &partial, 5);
    assert_eq!(z7(8, 5).log().unwrap(), expect);
    // The Teichmüller part is killed.
    let w = z7(3, 12).teichmuller().unwrap();
    assert!(w.log().unwrap().is_zero());
}

#[test]
fn exp_log_inverse() {
    let x = z7(7 * 4, 15);
    let e = x.exp().unwrap();
    let back = e.log().unwrap();
    assert_eq!(back, x.with_precision(back.precision()));
    assert!(back.precision() >= 14);
}

#[test]
fn sqrt_examples() {
    let two = z7(2, 12);
    let r = two.sqrt().unwrap();
    assert_eq!(&r * &r, two);
    assert_eq!(r.residue(), Some(3));
    assert!(z7(3, 12).sqrt().is_none());
    let r = z7(2 * 49, 12).sqrt_with_residue(Some(4)).unwrap();
    assert_eq!(r.valuation(), 1);
    assert_eq!(&r * &r, z7(98, 12));
}

#[test]
fn serde_round_trip() {
    for x in [z7(123456, 12), z7(-5, 3).div_int(49), PadicNumber::exact_zero(7), PadicNumber::zero(7, 9)] {
        let s = serde_json::to_string(&x).unwrap();
        let y: PadicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
    assert!(serde_json::from_str::<PadicNumber>(r#"{"p":7,"v":0,"u":"7","n":3}"#).is_err());
    assert!(serde_json::from_str::<PadicNumber>(r#"{"p":7,"v":0,"u":"400","n":3}"#).is_err());
}

fn unit_strategy(p: i64, prec: i32) -> impl Strategy<Value = PadicNumber> {
    (1i64..i64::MAX / 4).prop_filter_map("unit", move |n| {
        if n % p == 0 {
            None
        } else {
            Some(PadicNumber::from_i64(p as u32, n, prec))
        }
    })
}

fn any_strategy(p: i64, prec: i32) -> impl Strategy<Value = PadicNumber> {
    (unit_strategy(p, prec), -3i32..4).prop_map(|(u, k)| u.shift(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn log_is_multiplicative(a in unit_strategy(7, 15), b in unit_strategy(7, 15)) {
        let lhs = (&a * &b).log().unwrap();
        let rhs = &a.log().unwrap() + &b.log().unwrap();
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn inverse_is_inverse(a in any_strategy(7, 20)) {
        let one = &a * &a.inverse().unwrap();
        prop_assert!((&one - &PadicNumber::one(7, 40)).is_zero());
        prop_assert_eq!(one.valuation(), 0);
    }

    #[test]
    fn field_axioms(a in any_strategy(11, 14), b in any_strategy(11, 14), c in any_strategy(11, 14)) {
        prop_assert!(((&(&a * &b) * &c) - (&a * &(&b * &c))).is_zero());
        prop_assert!(((&(&a + &b) + &c) - (&a + &(&b + &c))).is_zero());
        prop_assert!(((&a * &(&b + &c)) - (&(&a * &b) + &(&a * &c))).is_zero());
    }

    #[test]
    fn teichmuller_is_root_of_unity(a in unit_strategy(5, 16)) {
        let w = a.teichmuller().unwrap();
        prop_assert!((&w.pow(4).unwrap() - &PadicNumber::one(5, 16)).is_zero());
        prop_assert_eq!(w.residue(), a.residue());
    }

    #[test]
    fn higher_precision_agrees(n in 1i64..1_000_000_000, d in 1i64..1_000_000) {
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        let lo = PadicNumber::from_rational(7, &r, 8);
        let hi = PadicNumber::from_rational(7, &r, 16);
        prop_assert_eq!(hi.with_precision(8), lo.clone());
        if lo.is_unit() {
            prop_assert_eq!(hi.log().unwrap().with_precision(8), lo.log().unwrap());
        }
    }
}
