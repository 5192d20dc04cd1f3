#![no_main]

use libfuzzer_sys::fuzz_target;
use loctop_cli::syntax::{parse_ball_1d, parse_ball_2d};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_ball_1d(text);
    if let Ok(b) = parse_ball_2d(text) {
        assert_eq!(parse_ball_2d(&b.to_string()), Ok(b));
    }
});
