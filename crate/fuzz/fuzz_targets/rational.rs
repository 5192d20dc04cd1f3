#![no_main]

use libfuzzer_sys::fuzz_target;
use loctop_cli::syntax::{parse_point, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_rational(text) {
        assert_eq!(parse_rational(&q.to_string()), Ok(q));
    }
    let _ = parse_point(text);
});
