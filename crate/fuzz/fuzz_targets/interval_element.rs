#![no_main]

use libfuzzer_sys::fuzz_target;
use loctop::kernel::reals::OpenInterval;
use loctop::numerics::rat;
use loctop_cli::syntax::{parse_interval_element, parse_open_interval};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_open_interval(text);
    let ambient = OpenInterval::new(rat(-4, 1), rat(4, 1));
    if let Ok(e) = parse_interval_element(text, &ambient) {
        assert_eq!(parse_interval_element(&e.to_string(), &ambient), Ok(e));
    }
});
