#![no_main]

use libfuzzer_sys::fuzz_target;
use loctop_cli::syntax::{parse_carrier, parse_vterm_finite, parse_vterm_intervals, Carrier};

// Input: a carrier line, then a term.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (head, term) = text.split_once('\n').unwrap_or((text, ""));
    match parse_carrier(head) {
        Ok(Carrier::Finite(l)) => {
            if let Ok(t) = parse_vterm_finite(term, &l) {
                assert_eq!(parse_vterm_finite(&t.to_string(), &l), Ok(t));
            }
        }
        Ok(Carrier::Intervals(ambient)) => {
            let _ = parse_vterm_intervals(term, &ambient);
        }
        Err(_) => {}
    }
});
