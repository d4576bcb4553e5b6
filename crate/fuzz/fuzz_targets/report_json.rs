#![no_main]

use libfuzzer_sys::fuzz_target;
use sssp_frontier::report::ReportBundle;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(bundle) = ReportBundle::from_json(text) {
        if let Ok(json) = bundle.to_json() {
            let again = ReportBundle::from_json(&json).expect("serialized report reparses");
            assert_eq!(again.to_json().unwrap(), json);
        }
    }
});
