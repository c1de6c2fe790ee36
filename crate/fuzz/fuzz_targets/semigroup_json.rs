#![no_main]

use libfuzzer_sys::fuzz_target;
use nsg_core::NumericalSemigroup;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = serde_json::from_slice::<NumericalSemigroup>(data) {
        let json = serde_json::to_string(&s).unwrap();
        let back: NumericalSemigroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.gaps(), s.gaps());
    }
});
