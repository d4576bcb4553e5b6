#![no_main]

use libfuzzer_sys::fuzz_target;
use sssp_frontier::Scenario;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(def) = Scenario::parse_definition(text) {
        // Accepted scenarios must be evaluable wherever their laws stay finite.
        for n in [2.0, 1e3, 1e6] {
            let _ = def.scenario.params_at(n);
        }
        if let Some(grid) = def.grid {
            assert!(grid.points().windows(2).all(|w| w[0] < w[1]));
        }
    }
});
