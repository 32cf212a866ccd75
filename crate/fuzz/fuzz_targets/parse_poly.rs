#![no_main]

use libfuzzer_sys::fuzz_target;
use multlab::exactnum::Field;
use multlab::parser::{parse_affine, parse_bipoly, parse_zform};

// The three polynomial grammars must reject garbage with an error, never a
// panic. First byte selects n; the rest is the candidate text.
fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else {
        return;
    };
    let n = usize::from(sel % 4);
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    for field in [Field::Q, Field::fp(7).unwrap()] {
        let _ = parse_bipoly(text, n, field);
        let _ = parse_affine(text, n, field);
        let _ = parse_zform(text, n, field);
    }
});
