#![no_main]

use libfuzzer_sys::fuzz_target;
use sssp_frontier::format::parse_count;
use sssp_frontier::scenario::GridMode;
use sssp_frontier::NGrid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_count(text);
    let _ = text.parse::<GridMode>();
    if let Ok(grid) = text.parse::<NGrid>() {
        if grid.points_per_decade <= 1000 {
            let pts = grid.points();
            assert!(!pts.is_empty());
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
            assert!(pts[0] >= grid.n_min && *pts.last().unwrap() <= grid.n_max);
        }
    }
});
