#![no_main]

use devilfish::fuzz::FuzzReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(report) = FuzzReport::from_json(text) {
            let _ = report.is_clean();
            let _ = report.to_json();
        }
    }
});
