#![no_main]

use devilfish::numfmt::{parse, shortest};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Some(v) = parse(text) {
        if !v.is_nan() {
            assert_eq!(parse(&shortest(v)).map(f64::to_bits), Some(v.to_bits()));
        }
    }
});
