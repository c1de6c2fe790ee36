#![no_main]

use libfuzzer_sys::fuzz_target;
use nsg_workbench::ReportRecord;

fuzz_target!(|data: &[u8]| {
    let Ok(r) = serde_json::from_slice::<ReportRecord>(data) else { return };
    let back: ReportRecord = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    // Rebuilding the semigroup is only cheap for small generators.
    if r.generators.iter().all(|&g| g <= 64) {
        if let Ok(s) = r.semigroup() {
            assert!(s.generators().len() <= r.generators.len());
            let _ = r.recompute_flags();
        }
    }
});
