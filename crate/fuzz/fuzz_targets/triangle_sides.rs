#![no_main]

use devilfish::fuzz::check_triangle;
use devilfish::Triangle;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 24 {
        return;
    }
    let side = |i: usize| f64::from_le_bytes(data[8 * i..8 * i + 8].try_into().unwrap());
    if let Ok(t) = Triangle::new(side(0), side(1), side(2)) {
        let _ = check_triangle(&t, 1e-12);
        let _ = t.corollary_b_check();
    }
});
