#![no_main]

use libfuzzer_sys::fuzz_target;
use multlab::config::load_certificate;

// Transference certificate files (JSON with embedded cycle/series data).
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = load_certificate(text);
});
