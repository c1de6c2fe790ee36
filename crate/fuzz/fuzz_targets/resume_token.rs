#![no_main]

use libfuzzer_sys::fuzz_target;
use nsg_workbench::ResumeToken;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = text.parse::<ResumeToken>() {
        assert_eq!(t.to_string().parse::<ResumeToken>().unwrap(), t);
        assert!(t.0.windows(2).all(|w| w[0] < w[1]));
    }
});
