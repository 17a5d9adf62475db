#![no_main]

use icosolve::param::cache::CacheDocument;
use icosolve::PrecisionContext;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = CacheDocument::from_json(text, &PrecisionContext::default());
    }
});
