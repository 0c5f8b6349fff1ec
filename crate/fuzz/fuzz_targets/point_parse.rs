#![no_main]
use libfuzzer_sys::fuzz_target;
use qc_core::curve::{parse_point, parse_rational};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_point(text);
        let _ = parse_rational(text);
    }
});
