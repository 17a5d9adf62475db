#![no_main]

use icosolve::literal::{parse_resolution, parse_viewport, MAX_SIDE};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(v) = parse_viewport(text) {
            assert!(v.x0 < v.x1 && v.y0 < v.y1);
        }
        if let Ok((w, h)) = parse_resolution(text) {
            assert!((1..=MAX_SIDE).contains(&w) && (1..=MAX_SIDE).contains(&h));
        }
    }
});
