#![no_main]

use libfuzzer_sys::fuzz_target;
use nsg_core::{GeneratorSet, NumericalSemigroup};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(set) = text.parse::<GeneratorSet>() else { return };
    let v = set.values();
    assert!(v.windows(2).all(|w| w[0] < w[1]) && v[0] >= 1);
    // Large multiplicities are valid but slow; the window limit is tested elsewhere.
    if v[0] > 1 << 12 {
        return;
    }
    if let Ok(s) = NumericalSemigroup::from_generator_set(&set) {
        let again: NumericalSemigroup = s.to_string().parse::<GeneratorSet>().and_then(|g| NumericalSemigroup::from_generator_set(&g)).unwrap();
        assert_eq!(again, s);
        assert!(s.generators().iter().all(|&g| s.contains(g as i64)));
        assert_eq!(s.is_natural(), s.frobenius() == -1);
    }
});
