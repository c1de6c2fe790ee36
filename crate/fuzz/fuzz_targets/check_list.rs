#![no_main]

use libfuzzer_sys::fuzz_target;
use nsg_workbench::parse_checks;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(ids) = parse_checks(text) {
        assert!(!ids.is_empty());
        let names: Vec<&str> = ids.iter().map(|c| c.name()).collect();
        assert_eq!(parse_checks(&names.join(",")).unwrap(), ids);
    }
});
