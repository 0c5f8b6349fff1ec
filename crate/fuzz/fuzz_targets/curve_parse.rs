#![no_main]
use libfuzzer_sys::fuzz_target;
use qc_core::curve::WeierstrassCurve;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(e) = WeierstrassCurve::parse(text) {
            let _ = e.check_prime(7);
        }
    }
});
