#![no_main]

use devilfish::certify::{parse_certificate, to_json, verify_certificate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = parse_certificate(text) {
        let _ = verify_certificate(&cert);
        // Anything that parses must survive a round trip unchanged.
        let again = parse_certificate(&to_json(&cert)).expect("re-parse of emitted certificate");
        assert_eq!(to_json(&again), to_json(&cert));
    }
});
