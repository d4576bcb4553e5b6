#![no_main]

use libfuzzer_sys::fuzz_target;
use sssp_frontier::frontier::{parse_path_axis, ExponentRange};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(range) = text.parse::<ExponentRange>() {
        if range.count <= 100_000 {
            assert_eq!(range.values().len(), range.count);
        }
    }
    if let Ok(paths) = parse_path_axis(text) {
        assert!(!paths.is_empty());
    }
});
