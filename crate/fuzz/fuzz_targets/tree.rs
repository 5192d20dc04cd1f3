#![no_main]

use libfuzzer_sys::fuzz_target;
use loctop::trees::AlphaReading;
use loctop_cli::syntax::{parse_removal_set, parse_tree_node};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(node) = parse_tree_node(text) {
        assert_eq!(parse_tree_node(&node.to_string()), Ok(node));
    }
    let _ = parse_removal_set(text, AlphaReading::Pair);
    let _ = parse_removal_set(text, AlphaReading::ZeroRun);
});
