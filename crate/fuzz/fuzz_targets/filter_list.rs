#![no_main]

use libfuzzer_sys::fuzz_target;
use nsg_workbench::job::parse_list;
use nsg_workbench::Filter;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(filters) = parse_list::<Filter>(text) {
        assert!(filters.windows(2).all(|w| w[0] < w[1]));
        let names: Vec<&str> = filters.iter().map(|f| f.name()).collect();
        assert_eq!(parse_list::<Filter>(&names.join(",")).unwrap(), filters);
    }
});
