#![no_main]

use libfuzzer_sys::fuzz_target;
use multlab::config::RunConfig;

// Run-configuration JSON: malformed input must come back as a config error.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = RunConfig::from_json(text);
});
