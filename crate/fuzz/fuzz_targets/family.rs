#![no_main]

use libfuzzer_sys::fuzz_target;
use loctop_cli::syntax::{parse_ball_element, parse_family, parse_reals_element};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_family(text, &parse_reals_element);
    let _ = parse_family(text, &parse_ball_element);
});
