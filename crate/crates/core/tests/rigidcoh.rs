use qc_core::curve::WeierstrassCurve;
use qc_core::padic::PadicNumber;
use qc_core::rigidcoh::FrobeniusData;

fn c37a() -> WeierstrassCurve {
    WeierstrassCurve::from_i64s([0, 0, 1, -1, 0]).unwrap()
}

#[test]
fn characteristic_polynomial_matches_point_count() {
    let e = c37a();
    for p in [5u32, 7, 11] {
        let n = 10;
        let d = FrobeniusData::compute(&e, p, n).unwrap();
        let ap = e.count_points(p).unwrap().a_p;
        let tr = d.trace();
        let diff = &tr - &PadicNumber::from_i64(p, ap, 40);
        assert!(diff.valuation() >= n, "p={p} trace={:?} ap={ap}", tr.to_balanced_bigint());
        let det = d.det();
        let ddiff = &det - &PadicNumber::from_i64(p, p as i64, 40);
        assert!(ddiff.valuation() >= n, "p={p} det={:?}", det.to_balanced_bigint());
    }
}

#[test]
fn pullback_differs_from_basis_by_exact_form() {
    use qc_core::rigidcoh::{disk_chart, pullback_on_disk};
    let e = c37a();
    let p = 7u32;
    let n = 10;
    let d = FrobeniusData::compute(&e, p, n).unwrap();
    let order = 14;
    for disk in e.residue_disks(p, 2 * n).unwrap().iter().take(3) {
        let chart = disk_chart(&e, disk, 2 * n, order + 2).unwrap();
        let pb = pullback_on_disk(&e, disk, 2 * n, order + 2).unwrap();
        for i in 0..2 {
            let g = d.primitives[i].series(&chart.x, &chart.y).unwrap();
            let dg = g.derivative();
            let rhs = pb[i].sub(&chart.omega[0].scale(d.m(0, i))).sub(&chart.omega[1].scale(d.m(1, i)));
            for k in 0..order {
                let diff = &dg.coeff(k) - &rhs.coeff(k);
                assert!(diff.is_zero() || diff.valuation() >= n - 2, "disk {} i={i} k={k} v={}", disk.index, diff.valuation());
            }
        }
    }
}

#[test]
fn origin_lift_reduces_to_frobenius() {
    use qc_core::rigidcoh::frobenius_on_origin_parameter;
    let e = c37a();
    for p in [5u32, 7] {
        let phi = frobenius_on_origin_parameter(&e, p, 12, 30).unwrap();
        for k in 0..30 {
            let c = phi.coeff(k);
            let expect = if k == p as i32 { 1 } else { 0 };
            let diff = &c - &PadicNumber::from_i64(p, expect, 12);
            assert!(diff.is_zero() || diff.valuation() >= 1, "p={p} k={k}");
        }
    }
}

#[test]
fn cache_round_trip_and_determinism() {
    let e = c37a();
    let a = FrobeniusData::compute(&e, 5, 6).unwrap();
    let b = FrobeniusData::compute(&e, 5, 6).unwrap();
    assert_eq!(a, b);
    let back = FrobeniusData::from_json(&a.to_json()).unwrap();
    assert_eq!(a, back);
    let dir = tempfile::tempdir().unwrap();
    let (c, hit) = FrobeniusData::load_or_compute(&e, 5, 6, Some(dir.path())).unwrap();
    assert!(!hit);
    let (d, hit) = FrobeniusData::load_or_compute(&e, 5, 6, Some(dir.path())).unwrap();
    assert!(hit);
    assert_eq!(c, d);
    assert!(FrobeniusData::from_json("{}").is_err());
    let mut bad: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    bad["version"] = 99.into();
    assert!(FrobeniusData::from_json(&bad.to_string()).is_err());
}

#[test]
fn supersingular_or_small_budget_is_reported() {
    let e = c37a();
    assert!(FrobeniusData::compute(&e, 37, 5).is_err());
    assert!(FrobeniusData::compute(&e, 2, 5).is_err());
}
