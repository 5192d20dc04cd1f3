#![no_main]

use libfuzzer_sys::fuzz_target;
use loctop_cli::syntax::{parse_ball_element, parse_derivation, parse_reals_element};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_derivation(text, &parse_reals_element) {
        assert_eq!(parse_derivation(&d.to_string(), &parse_reals_element), Ok(d));
    }
    let _ = parse_derivation(text, &parse_ball_element);
});
