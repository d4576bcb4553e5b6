#![no_main]

use libfuzzer_sys::fuzz_target;
use sssp_frontier::report::parse_sweep_csv;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = parse_sweep_csv(text) {
        assert!(table
            .rows
            .iter()
            .all(|(_, costs)| costs.len() == table.models.len()));
    }
});
