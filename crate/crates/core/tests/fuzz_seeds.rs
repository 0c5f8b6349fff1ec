//! The checked-in fuzz seeds are valid inputs for their targets.

use std::path::PathBuf;

use qc_core::chabauty::SweepReport;
use qc_core::curve::{parse_point, WeierstrassCurve};
use qc_core::padic::PadicNumber;
use qc_core::rigidcoh::FrobeniusData;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn curve_seeds() {
    for (name, text) in seeds("curve_parse") {
        assert_eq!(WeierstrassCurve::parse(&text).is_ok(), name != "short", "{name}");
    }
}

#[test]
fn point_seeds() {
    for (name, text) in seeds("point_parse") {
        assert_eq!(parse_point(&text).is_ok(), name != "zero_denominator", "{name}");
    }
}

#[test]
fn json_seeds_round_trip() {
    for (name, text) in seeds("frobenius_json") {
        let d = FrobeniusData::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(FrobeniusData::from_json(&d.to_json()).unwrap().to_json(), d.to_json());
    }
    for (name, text) in seeds("report_json") {
        let r = SweepReport::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(SweepReport::from_json(&r.to_json()).unwrap(), r);
    }
    for (name, text) in seeds("padic_json") {
        let a: PadicNumber = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(serde_json::from_str::<PadicNumber>(&serde_json::to_string(&a).unwrap()).unwrap(), a);
    }
}
