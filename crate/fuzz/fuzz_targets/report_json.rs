#![no_main]
use libfuzzer_sys::fuzz_target;
use qc_core::chabauty::SweepReport;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(r) = SweepReport::from_json(text) {
            let _ = r.to_table();
        }
    }
});
