#![no_main]

use icosolve::literal::parse_complex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(z) = parse_complex(text, 200) {
            assert!(z.is_finite());
        }
    }
});
