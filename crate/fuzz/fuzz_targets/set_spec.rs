#![no_main]

use libfuzzer_sys::fuzz_target;
use loctop_cli::syntax::parse_set_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = parse_set_spec(text) {
        let printed = set.to_string();
        assert_eq!(parse_set_spec(&printed).as_ref(), Ok(&set), "{printed}");
    }
});
