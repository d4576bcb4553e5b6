#![no_main]

use libfuzzer_sys::fuzz_target;
use sssp_frontier::ScalingLaw;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(law) = text.parse::<ScalingLaw>() {
        let again: ScalingLaw = law.to_string().parse().expect("displayed law reparses");
        assert_eq!(again, law);
    }
});
