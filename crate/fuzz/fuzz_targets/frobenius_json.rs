#![no_main]
use libfuzzer_sys::fuzz_target;
use qc_core::rigidcoh::FrobeniusData;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(d) = FrobeniusData::from_json(text) {
            let _ = d.curve();
        }
    }
});
